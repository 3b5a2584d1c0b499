import json
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from gradprolong.cli import main
from gradprolong.io import read_alpha, read_aggregates, read_graph, read_matrix

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def path4_files(tmp_path):
    return (write(tmp_path, "fine.graph", "graph 4 3\n1 1 2\n2 2 3\n3 3 4\n"),
            write(tmp_path, "agg.txt", "aggregates 2 4\n1: 1 2 3\n2: 2 3 4\n"))


def test_build_path4(tmp_path, path4_files, capsys):
    assert main(["build", *path4_files, "--out", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "beta.mat").read_text() == "matrix 3 1\n1 1 1/2\n3 1 1/2\n"
    assert (tmp_path / "out" / "coarse.graph").read_text() == "graph 2 1\n1 1 2\n"
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["commutativity"] is True
    assert "commutativity verified" in capsys.readouterr().out


def test_build_identity(tmp_path):
    fine = write(tmp_path, "f", "graph 3 2\n1 1 2\n2 2 3\n")
    agg = write(tmp_path, "a", "aggregates 3 3\n1: 1\n2: 2\n3: 3\n")
    assert main(["build", fine, agg, "--out", str(tmp_path / "o")]) == 0
    assert (tmp_path / "o" / "beta.mat").read_text() == "matrix 2 2\n1 1 1\n2 2 1\n"


def test_build_infeasible_exit_2(tmp_path, capsys):
    fine = write(tmp_path, "f", "graph 2 1\n1 1 2\n")
    agg = write(tmp_path, "a", "aggregates 2 2\n1: 1\n2: 2\n")
    coarse = write(tmp_path, "c", "graph 2 0\n")
    assert main(["build", fine, agg, "--coarse", coarse, "--out", str(tmp_path / "o")]) == 2
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert report["commutativity"] is False
    assert report["connectivity"]["disconnected"] == [{"edge": 1, "components": [[1], [2]]}]
    assert report["edges"][0]["status"] == "infeasible"
    assert not (tmp_path / "o" / "beta.mat").exists()
    assert "infeasible" in capsys.readouterr().err


def test_input_error_exit_1(tmp_path, capsys):
    fine = write(tmp_path, "f", "graph 2 1\n1 1 2\n")
    agg = write(tmp_path, "a", "aggregates 1 2\n1: 1\n")
    assert main(["build", fine, agg, "--out", str(tmp_path / "o")]) == 1
    assert "not covered" in capsys.readouterr().err
    assert main(["build", str(tmp_path / "missing"), agg, "--out", str(tmp_path / "o")]) == 1


def test_float_alpha_rejected(tmp_path, path4_files, capsys):
    alpha = write(tmp_path, "alpha", "matrix 4 2\n1 1 1\n2 1 0.5\n2 2 0.5\n3 1 1/2\n3 2 1/2\n4 2 1\n")
    assert main(["build", *path4_files, "--alpha", alpha, "--out", str(tmp_path / "o")]) == 1
    assert "rational" in capsys.readouterr().err


def test_correction_zero(tmp_path):
    fine = write(tmp_path, "f", "graph 3 3\n1 1 2\n2 2 3\n3 1 3\n")
    agg = write(tmp_path, "a", "aggregates 3 3\n1: 1 2\n2: 2 3\n3: 1 3\n")
    out = {}
    for policy in ("minnorm", "zero"):
        assert main(["build", fine, agg, "--correction", policy, "--out", str(tmp_path / policy)]) == 0
        out[policy] = (tmp_path / policy / "beta.mat").read_text()
        assert json.loads((tmp_path / policy / "report.json").read_text())["correction"] == policy
    assert out["minnorm"] != out["zero"]


def test_golden_build(tmp_path):
    args = [str(GOLDEN / "fine.graph"), str(GOLDEN / "aggregates.txt"), "--alpha", str(GOLDEN / "alpha.mat")]
    assert main(["build", *args, "--out", str(tmp_path)]) == 0
    for name in ("beta.mat", "coarse.graph", "report.json"):
        assert (tmp_path / name).read_bytes() == (GOLDEN / "expected" / name).read_bytes(), name


def test_golden_beta_commutes():
    """Dense exact check of the frozen output, independent of the package's products."""
    fine = read_graph(GOLDEN / "fine.graph")
    coarse = read_graph(GOLDEN / "expected" / "coarse.graph")
    agg = read_aggregates(GOLDEN / "aggregates.txt")
    alpha = read_alpha(GOLDEN / "alpha.mat", agg)
    rows, cols, triplets = read_matrix(GOLDEN / "expected" / "beta.mat")

    def incidence(g):
        m = sympy.zeros(g.edge_count, g.node_count)
        for i, (t, h) in enumerate(g.edges):
            m[i, t - 1], m[i, h - 1] = -1, 1
        return m

    A = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in alpha.to_dense()])
    B = sympy.zeros(rows, cols)
    for r, c, v in triplets:
        B[r - 1, c - 1] = sympy.Rational(v.numerator, v.denominator)
    assert incidence(fine) * A == B * incidence(coarse)


def test_gen_is_deterministic(tmp_path, capsys):
    for d in ("a", "b"):
        assert main(["gen", "--seed", "7", "--nodes", "12", "--density", "0.3", "--aggregates", "3",
                     "--overlap", "0.3", "--random-alpha", "--out", str(tmp_path / d)]) == 0
    for name in ("fine.graph", "aggregates.txt", "alpha.mat"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert (tmp_path / "a" / name).read_bytes() == (GOLDEN / name).read_bytes()


def test_gen_rejects_bad_seed(capsys):
    with pytest.raises(SystemExit):
        main(["gen", "--seed", "-1", "--nodes", "4", "--density", "1", "--aggregates", "2", "--out", "x"])


def test_oracle_command(tmp_path, path4_files, capsys):
    assert main(["oracle", *path4_files]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["solvable"] is True
    assert data["rows"][0]["solution"] == {"1": "1/2"}
    assert main(["oracle", *path4_files, "--out", str(tmp_path / "o")]) == 0
    assert json.loads((tmp_path / "o" / "oracle.json").read_text()) == data


def test_witness_then_build(tmp_path, capsys):
    fine = write(tmp_path, "f", "graph 4 3\n1 1 2\n2 2 3\n3 3 4\n")
    agg = write(tmp_path, "a", "aggregates 2 4\n1: 1 2\n2: 3 4\n")
    coarse = write(tmp_path, "c", "graph 2 0\n")
    out = tmp_path / "w"
    assert main(["witness", fine, agg, "--coarse", coarse, "--out", str(out)]) == 0
    info = json.loads((out / "witness.json").read_text())
    assert info["edge"] == 2 and abs(Fraction(info["witness"])) == 1
    assert main(["oracle", fine, agg, "--coarse", coarse, "--alpha", str(out / "alpha.mat")]) == 2
    assert main(["build", fine, agg, "--coarse", coarse, "--alpha", str(out / "alpha.mat"),
                 "--out", str(tmp_path / "b")]) == 2


def test_witness_requires_disconnection(tmp_path, path4_files, capsys):
    coarse = write(tmp_path, "c", "graph 2 1\n1 1 2\n")
    assert main(["witness", *path4_files, "--coarse", coarse, "--out", str(tmp_path / "w")]) == 1
    assert main(["witness", *path4_files, "--coarse", coarse, "--edge", "1", "--out", str(tmp_path / "w")]) == 1
    assert main(["witness", *path4_files, "--coarse", coarse, "--edge", "9", "--out", str(tmp_path / "w")]) == 1


def test_timing_flag(tmp_path, path4_files):
    assert main(["build", *path4_files, "--timing", "--out", str(tmp_path)]) == 0
    assert "timing_seconds" in json.loads((tmp_path / "report.json").read_text())


def test_module_entry_point(tmp_path, path4_files):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "gradprolong.cli", "build", *path4_files, "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr

