"""Exception hierarchy.

``InputError`` covers everything caused by bad user data (exit code 1 in the
CLI).  ``Infeasible`` is the solvability failure (exit code 2).  The
remaining classes flag internal inconsistencies that should never surface on
valid input.
"""


class GradProlongError(Exception):
    """Base class for all package errors."""


class InputError(GradProlongError, ValueError):
    """Malformed or inconsistent input data."""


class InvalidGraph(InputError):
    pass


class DisconnectedInput(GradProlongError):
    """A spanning tree was requested on a disconnected restriction."""


class CoverViolation(InputError):
    def __init__(self, uncovered):
        self.uncovered = sorted(uncovered)
        super().__init__(f"fine nodes not covered by any aggregate: {self.uncovered}")


class EmptyAggregate(InputError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"aggregate {n} is empty")


class RowSumViolation(InputError):
    def __init__(self, p, actual):
        self.p = p
        self.actual = actual
        super().__init__(f"row {p} of alpha sums to {actual}, expected 1")


class SupportViolation(InputError):
    def __init__(self, p, n):
        self.p = p
        self.n = n
        super().__init__(f"alpha[{p}, {n}] is nonzero but fine node {p} is not in aggregate {n}")


class DuplicateEntry(InputError):
    def __init__(self, p, n):
        self.p = p
        self.n = n
        super().__init__(f"duplicate entry ({p}, {n})")


class NotStrictSubset(InputError):
    def __init__(self, component, union):
        self.component = sorted(component)
        self.union = sorted(union)
        super().__init__(
            f"component {self.component} is not a strict subset of {self.union}; no counterexample exists"
        )


class Lemma2Violation(GradProlongError):
    def __init__(self, edge, expected, actual):
        self.edge = edge
        self.expected = sorted(expected)
        self.actual = sorted(actual)
        super().__init__(
            f"fine edge {edge}: coarse edges {self.actual} differ from induced edges {self.expected}"
        )


class Infeasible(GradProlongError):
    def __init__(self, edge, components):
        self.edge = edge
        self.components = [sorted(c) for c in components]
        super().__init__(
            f"fine edge {edge}: induced coarse subgraph is disconnected, components {self.components}"
        )


class InternalInconsistency(GradProlongError):
    pass


class VerificationFailure(GradProlongError):
    def __init__(self, row, col, expected, actual):
        self.row = row
        self.col = col
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"(beta G^H)[{row}, {col}] = {actual} but (G^h alpha)[{row}, {col}] = {expected}"
        )


class SizeLimit(GradProlongError):
    pass


class GenerationFailure(GradProlongError):
    pass
