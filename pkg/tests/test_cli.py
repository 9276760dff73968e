import json

import numpy as np
import pytest

from normalroots.cli import main
from normalroots.matio import (
    MatrixFormatError,
    format_matrix,
    load_matrix,
    parse_matrix,
    save_matrix,
)
from normalroots.sampling import random_normal_signdef


# --- matrix file format ------------------------------------------------------


def test_parse_scalar():
    assert np.array_equal(parse_matrix("1\n2.0 0.0\n"), [[2.0]])


def test_parse_identity():
    M = parse_matrix("2\n1 0  0 0\n0 0  1 0\n")
    assert np.array_equal(M, np.eye(2))


def test_parse_tab_separated():
    M = parse_matrix("2\n1 0\t0 0\n0 0\t1 0\n")
    assert np.array_equal(M, np.eye(2))


def test_parse_missing_row():
    with pytest.raises(MatrixFormatError, match="expected 2 rows"):
        parse_matrix("2\n1 0\n")


def test_parse_bad_header():
    with pytest.raises(MatrixFormatError, match="header"):
        parse_matrix("x\n1 0\n")


def test_parse_bad_number():
    with pytest.raises(MatrixFormatError, match="line 2"):
        parse_matrix("1\nfoo bar\n")


def test_parse_wrong_entry_count():
    with pytest.raises(MatrixFormatError, match="entries"):
        parse_matrix("2\n1 0  0 0  1 0\n0 0  1 0\n")


def test_format_parse_roundtrip_exact():
    rng = np.random.default_rng(3)
    M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    M *= np.pi  # irrational entries: full 17-digit serialization exercised
    assert np.array_equal(parse_matrix(format_matrix(M)), M)


def test_save_load_roundtrip(tmp_path):
    rng = np.random.default_rng(4)
    M, _ = random_normal_signdef(rng, 5)
    path = tmp_path / "m.mat"
    save_matrix(path, M)
    assert np.array_equal(load_matrix(path), M)


# --- CLI ----------------------------------------------------------------------


def _write(tmp_path, name, M):
    path = tmp_path / name
    save_matrix(path, M)
    return str(path)


def _read_report(path):
    with open(path) as fh:
        return json.load(fh)


def test_cli_sqrt_end_to_end(tmp_path):
    rng = np.random.default_rng(5)
    N, _ = random_normal_signdef(rng, 4)
    n_path = _write(tmp_path, "N.mat", N)
    out = tmp_path / "T.mat"
    rpt = tmp_path / "r.json"
    assert main(["sqrt", n_path, "--out", str(out), "--json", str(rpt)]) == 0
    report = _read_report(rpt)
    assert report["schema"] == 1
    assert report["results"]["power_residual"] <= 1e-9
    T = load_matrix(out)
    assert np.linalg.norm(T @ T - N) <= 1e-9 * (1 + np.linalg.norm(N))


def test_cli_root_all_branches(tmp_path):
    n_path = _write(tmp_path, "N.mat", np.eye(2, dtype=complex))
    rpt = tmp_path / "r.json"
    assert main(["root", n_path, "--n", "3", "--all-branches", "--json", str(rpt)]) == 0
    report = _read_report(rpt)
    certs = report["results"]["certificates"]
    assert [c["branch"] for c in certs] == [0, 1, 2]
    assert all(c["power_residual"] <= 1e-9 for c in certs)


def test_cli_volterra_report(tmp_path):
    rpt = tmp_path / "r.json"
    assert main(["volterra", "--n", "64", "--json", str(rpt)]) == 0
    report = _read_report(rpt)
    assert report["results"]["norm"] == pytest.approx(2 / np.pi, abs=1e-3)
    assert report["results"]["spectral_radius"] == 1.0 / 128.0
    assert report["results"]["re_lambda_min"] >= -1e-12


def test_cli_sylvester(tmp_path):
    a = _write(tmp_path, "a.mat", np.diag([1.0, 2.0]).astype(complex))
    b = _write(tmp_path, "b.mat", np.diag([3.0, 4.0]).astype(complex))
    s = _write(tmp_path, "s.mat", np.ones((2, 2), dtype=complex))
    out = tmp_path / "x.mat"
    assert main(["sylvester", "--a", a, "--b", b, "--s", s, "--out", str(out)]) == 0
    X = load_matrix(out)
    assert np.allclose(X, [[-0.5, -1 / 3], [-1.0, -0.5]], atol=1e-11)


def test_cli_sylvester_singular_exits_1(tmp_path):
    a = _write(tmp_path, "a.mat", np.eye(2, dtype=complex))
    s = _write(tmp_path, "s.mat", np.ones((2, 2), dtype=complex))
    assert main(["sylvester", "--a", a, "--b", a, "--s", s]) == 1


def test_cli_precondition_failure_exits_1(tmp_path):
    # sqrt of a non-normal matrix
    n_path = _write(tmp_path, "J.mat", np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert main(["sqrt", n_path]) == 1


def test_cli_corrupted_fixture_exits_1(tmp_path):
    bad = tmp_path / "bad.mat"
    bad.write_text("2\n1 0\n")
    assert main(["sqrt", str(bad)]) == 1
    missing = tmp_path / "missing.mat"
    assert main(["sqrt", str(missing)]) == 1


def test_cli_usage_error_exits_64():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["root", "x.mat"])  # missing required --n
    assert exc.value.code == 64


def test_cli_classify_and_zero_square(tmp_path):
    t_path = _write(tmp_path, "T.mat", np.diag([1.0, 2.0]).astype(complex))
    c_path = _write(tmp_path, "C.mat", np.diag([1.0, 4.0]).astype(complex))
    rpt = tmp_path / "r.json"
    assert main(["classify", t_path, "--target", c_path, "--json", str(rpt)]) == 0
    assert _read_report(rpt)["results"]["case"] == "selfadjoint_invertible"

    j_path = _write(tmp_path, "J.mat", np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert main(["zero-square", j_path, "--json", str(rpt)]) == 0
    results = _read_report(rpt)["results"]
    assert results["re_indefinite"] and results["im_indefinite"]


def test_cli_range_and_commutators(tmp_path):
    m_path = _write(tmp_path, "M.mat", np.diag([1.0, 2.0]).astype(complex))
    rpt = tmp_path / "r.json"
    assert main(["range", m_path, "--json", str(rpt)]) == 0
    assert _read_report(rpt)["results"]["contains_zero"] is False

    rng = np.random.default_rng(6)
    t_path = _write(tmp_path, "T.mat", rng.standard_normal((3, 3)) + 0j)
    assert main(["commutators", t_path, "--json", str(rpt)]) == 0
    assert _read_report(rpt)["results"]["within_bound"] is True


def test_cli_decompose(tmp_path):
    rng = np.random.default_rng(7)
    T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    t_path = _write(tmp_path, "T.mat", T)
    out_re = tmp_path / "re.mat"
    out_im = tmp_path / "im.mat"
    assert main(["decompose", t_path, "--out-re", str(out_re), "--out-im", str(out_im)]) == 0
    re = load_matrix(out_re)
    im = load_matrix(out_im)
    assert np.allclose(re + 1j * im, T)


def test_cli_nilpotent_search(tmp_path):
    rpt = tmp_path / "r.json"
    code = main(["nilpotent-search", "--trials", "50", "--dim", "3", "--seed", "1",
                 "--json", str(rpt)])
    assert code == 0
    results = _read_report(rpt)["results"]
    assert results["violations"] == []
    assert results["nonzero_samples"] == 50


def test_cli_exp_periodicity(tmp_path):
    a_path = _write(tmp_path, "A.mat", np.diag([np.pi / 2]).astype(complex))
    rpt = tmp_path / "r.json"
    assert main(["exp-periodicity", a_path, "--k", "-3", "--json", str(rpt)]) == 0
    assert _read_report(rpt)["results"]["within_bound"] is True


def test_cli_determinism(tmp_path):
    rng = np.random.default_rng(8)
    N, _ = random_normal_signdef(rng, 3)
    n_path = _write(tmp_path, "N.mat", N)
    rpt = tmp_path / "r.json"
    reports = []
    for _ in range(2):
        assert main(["sqrt", n_path, "--json", str(rpt)]) == 0
        report = _read_report(rpt)
        report.pop("wall_time_s")
        reports.append(json.dumps(report, sort_keys=True))
    assert reports[0] == reports[1]


def test_cli_tolerance_flags_recorded(tmp_path):
    n_path = _write(tmp_path, "N.mat", np.eye(2, dtype=complex))
    rpt = tmp_path / "r.json"
    assert main(["sqrt", n_path, "--tol-residual", "1e-8", "--json", str(rpt)]) == 0
    assert _read_report(rpt)["tolerances"]["residual"] == 1e-8
