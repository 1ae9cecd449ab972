import json

import pytest

from minsurf import cli


def run(argv):
    return cli.main(argv)


def test_catalog_listing(tmp_path, capsys):
    out = tmp_path / "catalog.json"
    assert run(["catalog", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    names = [e["name"] for e in data["catalog"]]
    assert "catenoid" in names and "chen_gackstatter" in names
    assert data["version"]


def test_compute_catenoid(tmp_path):
    out = tmp_path / "cat.json"
    rc = run(["compute", "--surface", "catenoid", "--level", "4",
              "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["report"]["index"] == 1
    assert data["report"]["nullity"] == 3
    assert data["report"]["convergence"]["agrees"]
    csv_path = tmp_path / "cat.json.eigenvalues.csv"
    assert csv_path.exists()
    assert csv_path.read_text().startswith("k,eigenvalue")


def test_compute_reports_are_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(["compute", "--surface", "clifford_torus", "--grid", "16",
                    "--out", str(out)]) == 0
    ja, jb = a.read_text(), b.read_text()
    assert ja.replace(str(a), "X") == jb.replace(str(b), "X")


def test_compute_clifford(tmp_path):
    out = tmp_path / "cl.json"
    assert run(["compute", "--surface", "clifford_torus", "--grid", "32",
                "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["report"]["index"] == 1 and data["report"]["nullity"] == 4


def test_compute_plane_index_zero(tmp_path):
    out = tmp_path / "plane.json"
    assert run(["compute", "--surface", "plane", "--level", "3",
                "--out", str(out)]) == 0
    assert json.loads(out.read_text())["report"]["index"] == 0


def test_verify_identity_catenoid(tmp_path):
    out = tmp_path / "ident.json"
    rc = run(["verify-identity", "--surface", "catenoid", "--trials", "10",
              "--seed", "42", "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["passed"] and data["max_residual"] <= 1e-6
    assert len(data["residuals"]) == 10


def test_verify_identity_clifford(tmp_path):
    out = tmp_path / "identc.json"
    rc = run(["verify-identity", "--surface", "clifford_torus",
              "--trials", "5", "--grid", "16", "--out", str(out)])
    assert rc == 0
    assert json.loads(out.read_text())["passed"]


def test_bounds_catenoid_with_spectrum(tmp_path):
    out = tmp_path / "b.json"
    rc = run(["bounds", "--surface", "catenoid", "--with-spectrum",
              "--level", "4", "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    entries = {e["name"]: e for e in data["bounds"]["bounds"]}
    e12 = entries["totcurv_index3 (1.2, i_A <= T + 2g - 3)"]
    assert e12["bound"] == 1 and e12["verdict"] == "holds, sharp"
    assert (tmp_path / "b.json.bounds.csv").exists()


def test_bounds_chen_gackstatter_arithmetic_only(tmp_path):
    out = tmp_path / "cg.json"
    assert run(["bounds", "--surface", "chen_gackstatter",
                "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    entries = {e["name"]: e for e in data["bounds"]["bounds"]}
    assert entries["totcurv_index3 (1.2, i_A <= T + 2g - 3)"]["bound"] == 7
    assert entries["nayatani_index (1.2nayindx, i_A <= 3T/4 + 3g - 3)"][
        "bound"] == 6
    assert data["computed"] == {}


def test_usage_errors_exit_2(capsys):
    assert run(["compute", "--surface", "helicoid"]) == 2
    assert run(["compute", "--surface", "knoid"]) == 2
    assert run(["verify-identity", "--surface", "holomorphic_curve_R4"]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["compute"])             # missing --surface
    assert exc.value.code == 2


def test_surface_param_parsing():
    s = cli.parse_surface("knoid:5")
    assert s.params["k"] == 5
    s = cli.parse_surface("clifford_torus:s3")
    assert s.params["quotient"] == "s3"
    from minsurf.exceptions import CatalogError
    with pytest.raises(CatalogError):
        cli.parse_surface("catenoid:7")
