"""Aggregate covers and nodal prolongations.

An aggregation is a family of (possibly overlapping) fine node sets
``L_1 .. L_N`` covering ``1..n_fine``.  ``reciprocal[p - 1]`` lists the
aggregates containing fine node ``p``.  The nodal prolongation ``alpha`` is an
``n_fine x n_coarse`` matrix whose rows sum to one and whose nonzeros stay
inside the aggregates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    CoverViolation,
    DuplicateEntry,
    EmptyAggregate,
    InputError,
    NotStrictSubset,
    RowSumViolation,
    SupportViolation,
)
from .rational import as_rational


@dataclass(frozen=True)
class Aggregation:
    fine_node_count: int
    sets: tuple[frozenset[int], ...]
    reciprocal: tuple[frozenset[int], ...]

    @property
    def coarse_node_count(self) -> int:
        return len(self.sets)

    def members(self, n: int) -> frozenset[int]:
        return self.sets[n - 1]

    def owners(self, p: int) -> frozenset[int]:
        return self.reciprocal[p - 1]


def build_reciprocal(sets: Iterable[Iterable[int]], fine_node_count: int) -> Aggregation:
    """Validate a cover and compute, for every fine node, the aggregates holding it."""
    sets = tuple(frozenset(int(p) for p in s) for s in sets)
    if not sets:
        raise InputError("at least one aggregate is required")
    owners: list[set[int]] = [set() for _ in range(fine_node_count)]
    for n, members in enumerate(sets, start=1):
        if not members:
            raise EmptyAggregate(n)
        for p in members:
            if not 1 <= p <= fine_node_count:
                raise InputError(f"aggregate {n} contains node {p} outside 1..{fine_node_count}")
            owners[p - 1].add(n)
    uncovered = [p for p in range(1, fine_node_count + 1) if not owners[p - 1]]
    if uncovered:
        raise CoverViolation(uncovered)
    return Aggregation(fine_node_count, sets, tuple(frozenset(o) for o in owners))


@dataclass(frozen=True)
class NodalProlongation:
    aggregation: Aggregation
    rows: tuple[Mapping[int, Fraction], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.aggregation.fine_node_count, self.aggregation.coarse_node_count

    def row(self, p: int) -> Mapping[int, Fraction]:
        return self.rows[p - 1]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        p, n = key
        return self.rows[p - 1].get(n, Fraction(0))

    def triplets(self):
        for p, row in enumerate(self.rows, start=1):
            for n in sorted(row):
                yield p, n, row[n]

    def to_dense(self) -> list[list[Fraction]]:
        n_rows, n_cols = self.shape
        dense = [[Fraction(0)] * n_cols for _ in range(n_rows)]
        for p, n, v in self.triplets():
            dense[p - 1][n - 1] = v
        return dense


def validate_alpha(agg: Aggregation, rows: Iterable[Mapping[int, Fraction]]) -> None:
    """Raise unless every row sums to 1 and respects the aggregate support."""
    for p, row in enumerate(rows, start=1):
        for n, v in row.items():
            if v != 0 and n not in agg.reciprocal[p - 1]:
                raise SupportViolation(p, n)
        total = sum(row.values(), Fraction(0))
        if total != 1:
            raise RowSumViolation(p, total)


def default_alpha(agg: Aggregation) -> NodalProlongation:
    """Uniform split: ``alpha[p, n] = 1 / |owners(p)|`` on the owners of ``p``."""
    rows = []
    for owners in agg.reciprocal:
        w = Fraction(1, len(owners))
        rows.append({n: w for n in sorted(owners)})
    return NodalProlongation(agg, tuple(rows))


def load_alpha(agg: Aggregation, entries: Iterable[tuple[int, int, object]]) -> NodalProlongation:
    """Assemble alpha from ``(p, n, value)`` triplets and validate it exactly."""
    n_fine, n_coarse = agg.fine_node_count, agg.coarse_node_count
    rows: list[dict[int, Fraction]] = [{} for _ in range(n_fine)]
    seen = set()
    for p, n, value in entries:
        if not (1 <= p <= n_fine and 1 <= n <= n_coarse):
            raise InputError(f"entry ({p}, {n}) outside the {n_fine} x {n_coarse} matrix")
        if (p, n) in seen:
            raise DuplicateEntry(p, n)
        seen.add((p, n))
        v = as_rational(value)
        if v != 0:
            rows[p - 1][n] = v
    validate_alpha(agg, rows)
    return NodalProlongation(agg, tuple(rows))


def counterexample_alpha(agg: Aggregation, fine_edge: tuple[int, int], component: Iterable[int]) -> NodalProlongation:
    """A compliant alpha that makes one fine edge's row system unsolvable.

    ``component`` is a connected component of the coarse subgraph induced by
    ``owners(p) | owners(q)`` for the fine edge ``(p, q)``.  Rows ``p`` and
    ``q`` are concentrated on one aggregate each so that exactly one of them
    puts its unit mass inside the component; every other row is the uniform
    default.
    """
    p, q = fine_edge
    comp = frozenset(component)
    lp, lq = agg.owners(p), agg.owners(q)
    union = lp | lq
    if not comp:
        raise InputError("component must be nonempty")
    if not comp <= union:
        raise InputError(f"component {sorted(comp)} is not inside {sorted(union)}")
    if comp == union:
        raise NotStrictSubset(comp, union)

    if comp & lq and lp - comp:
        row_q, row_p = min(comp & lq), min(lp - comp)
    else:
        # comp meets lp and misses part of lq; the other branch is exhausted.
        row_p, row_q = min(comp & lp), min(lq - comp)

    rows = list(default_alpha(agg).rows)
    rows[p - 1] = {row_p: Fraction(1)}
    rows[q - 1] = {row_q: Fraction(1)}
    validate_alpha(agg, rows)
    return NodalProlongation(agg, tuple(rows))
