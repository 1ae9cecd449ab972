from fractions import Fraction

import pytest

from minsurf import bounds
from minsurf.bounds import SurfaceInvariants, evaluate_bounds, h0_totcurv, r_of
from minsurf.exceptions import IntegrityError


def test_r_of_note_table():
    # genus 0: always 0; genus 1: 2 when unbranched, 0 otherwise
    for b in range(6):
        assert r_of(0, b)[0] == 0
    assert r_of(1, 0)[0] == 2
    for b in range(1, 6):
        assert r_of(1, b)[0] == 0


def test_r_of_middle_case():
    r, info = r_of(2, 2)
    assert r == 4 and info["case"] == "clifford" and info["boundary"]
    # 4g - 2 + 2 floor(-b/2) with floor toward -infinity
    assert r_of(3, 3)[0] == 10 + 2 * (-2)      # floor(-3/2) = -2
    assert r_of(3, 4)[0] == 10 - 4


def test_r_of_case_guards_and_boundaries():
    # adjacent case formulas never produce a negative r at the boundaries
    for g in range(1, 8):
        for b in (2 * g - 2, 4 * g - 4, 4 * g - 3):
            if b < 0:
                continue
            r, info = r_of(g, b)
            assert r >= 0
            assert info["boundary"] or b == 4 * g - 3 or g == 1


def test_r_of_monotone_and_teichmuller_cap():
    # r <= 6g - 6 = dim Teichmueller for g >= 2 (the torus has r = 2)
    for g in range(0, 8):
        prev = None
        for b in range(0, 4 * g + 4):
            r, _ = r_of(g, b)
            if prev is not None:
                assert r <= prev
            prev = r
            if g >= 2:
                assert r <= 6 * g - 6
    assert r_of(0, 0)[0] == 0
    assert r_of(1, 0)[0] == 2


def test_r_of_rejects_negative():
    with pytest.raises(ValueError):
        r_of(-1, 0)


def test_h0_totcurv_values():
    assert h0_totcurv(4, 0) == 1          # catenoid
    for k in range(3, 9):
        assert h0_totcurv(4 * (k - 1), 0) == 2 * k - 3
    assert h0_totcurv(8, 1) == 4          # Chen-Gackstatter invariants


def test_h0_totcurv_laurent_count_oracle():
    # Laurent monomials z^j, -(k-2) <= j <= k-2, enumerate and count
    for k in range(3, 9):
        exps = [j for j in range(-(k - 2), k - 1)]
        assert len(exps) == h0_totcurv(4 * (k - 1), 0)


def test_h0_totcurv_errors():
    with pytest.raises(IntegrityError):
        h0_totcurv(0, 0)                  # planar
    with pytest.raises(IntegrityError):
        h0_totcurv(5, 0)                  # not an integer count


CATENOID = SurfaceInvariants("catenoid", 3, 0, 0, 2, 4, strong_symmetry=True)
KNOID3 = SurfaceInvariants("knoid(3)", 3, 0, 0, 3, 8, strong_symmetry=True)
CHEN_G = SurfaceInvariants("chen_gackstatter", 3, 1, 0, 1, 8)
CLIFFORD = SurfaceInvariants("clifford", 3, 1, 0, 0, 0, closed=True)


def test_catenoid_bounds_sharp():
    rep = evaluate_bounds(CATENOID, {"i_A": 1, "n_A": 3})
    e = rep.entry("totcurv_index3 (1.2, i_A <= T + 2g - 3)")
    assert e.bound == 1 and e.verdict == "holds, sharp"
    e = rep.entry("totcurv_3 (i_A + n_A <= T + 2g)")
    assert e.bound == 4 and e.verdict == "holds, sharp"
    e = rep.entry("indx_3sym (i_A <= T/2 + g - 1)")
    assert e.bound == 1 and e.verdict == "holds, sharp"
    assert not rep.failed()
    assert rep.h0_value == 1


def test_knoid_symmetric_bound_is_2k():
    rep = evaluate_bounds(KNOID3, {"i_A": 3, "n_A": 3})
    e = rep.entry("totcurv_3sym (i_A + n_A <= T/2 + g + 2)")
    assert e.bound == 6 and e.verdict == "holds, sharp"
    e = rep.entry("nayatani_index (1.2nayindx, i_A <= 3T/4 + 3g - 3)")
    assert e.bound == 3 and e.verdict == "holds, sharp"


def test_chen_gackstatter_arithmetic():
    rep = evaluate_bounds(CHEN_G)
    assert rep.entry("totcurv_index3 (1.2, i_A <= T + 2g - 3)").bound == 7
    assert rep.entry(
        "nayatani_index (1.2nayindx, i_A <= 3T/4 + 3g - 3)").bound == 6
    assert rep.h0_value == 4
    # known index 3 would satisfy both
    rep2 = evaluate_bounds(CHEN_G, {"i_A": 3})
    assert not rep2.failed()


def test_nayatani_guard():
    rep = evaluate_bounds(CATENOID, {"i_A": 1, "n_A": 3})
    e = rep.entry("nayatani (1.2nay, i_A + n_A <= 3T/4 + 3g)")
    assert not e.applicable and "8 pi" in e.verdict


def test_closed_surface_bounds():
    computed = {"i_A": 1, "n_A": 4, "i_E": 0, "n_E": 7, "n_E_T": 2}
    rep = evaluate_bounds(CLIFFORD, computed)
    assert rep.r_value == 2
    assert rep.entry("index_closed (i_A <= i_E + r)").verdict == "holds"
    e = rep.entry("index_closed3 (i_A <= i_E + r - 1)")
    assert e.bound == 1 and e.verdict == "holds, sharp"
    lo = rep.entry("nul_closed_lower (i_E + n_E - n_E_T <= i_A + n_A)")
    assert lo.verdict == "holds, sharp"          # 5 <= 5
    hi = rep.entry("nul_closed_upper (i_A + n_A <= i_E + n_E - n_E_T + r)")
    assert hi.bound == 7 and hi.verdict == "holds"
    assert not rep.failed()


def test_violated_bound_fails():
    rep = evaluate_bounds(CATENOID, {"i_A": 99, "n_A": 3})
    assert rep.failed()


def test_osserman_chain():
    # (1.1)'s second inequality is arithmetic on the stored invariants
    rep = evaluate_bounds(KNOID3)
    e = rep.entry("totcurv_index_chain (1.1 second inequality)")
    assert e.computed <= e.bound
    assert KNOID3.osserman_holds()


def test_nonpositive_ambient_entry():
    flat_torus_surface = SurfaceInvariants(
        "t2_in_flat_t3", 3, 1, 0, 0, 0, closed=True, nonpositive_ambient=True)
    rep = evaluate_bounds(flat_torus_surface, {"i_A": 0})
    e = rep.entry("nonpositive_ambient (i_A <= r <= 6g-6)")
    assert e.applicable and e.bound == 2 and e.verdict == "holds"


def test_gauss_degree_integrity():
    inv = SurfaceInvariants("bad", 3, 0, 0, 1, 5)
    with pytest.raises(IntegrityError):
        inv.gauss_degree()


def test_bound_report_serialization():
    rep = evaluate_bounds(KNOID3, {"i_A": 3, "n_A": 3})
    d = rep.as_dict()
    assert d["surface"] == "knoid(3)" and d["h0"] == 3
    names = [e["name"] for e in d["bounds"]]
    assert len(names) == len(set(names))
    for e in d["bounds"]:
        assert not isinstance(e["bound"], Fraction)
