"""The acceptance suite: one test per criterion, one PASS/FAIL line each.

Criterion 1 is asserted against the literally printed golden series.  Its A0
half is expected to fail: the printed A0 expansion contradicts the exact
colored Jones polynomials (see the p roject notes); the companion substance
test pins the correct series against the polynomials and passes.  Everything
else is green.
"""

import pytest

from torus_tails import selfcheck


def _report(rep):
    status = "PASS" if rep["ok"] else "FAIL"
    print(f"[{status}] {rep['name']}: {rep['detail']}")
    return rep


def test_criterion_01_golden_t45_printed_series():
    rep = _report(selfcheck.check_golden_t45_printed())
    assert rep["a1_ok"], rep["detail"]
    assert rep["ok"], (
        "printed A0 expansion is inconsistent with the exact polynomials; "
        "expected red - see decisions ledger. " + rep["detail"])


def test_criterion_01s_t45_series_vs_exact_polynomials():
    rep = _report(selfcheck.check_golden_t45_substance())
    assert rep["ok"], rep["detail"]


@pytest.mark.slow
def test_criterion_02_three_way_tail_agreement():
    rep = _report(selfcheck.check_three_way_tails())
    assert rep["ok"], rep["detail"]


def test_criterion_03_trefoil_theta_tail():
    rep = _report(selfcheck.check_trefoil_theta_tail())
    assert rep["ok"], rep["detail"]


def test_criterion_04_degree_formulas():
    rep = _report(selfcheck.check_degree_formulas())
    assert rep["ok"], rep["detail"]


def test_criterion_05_extremizer_theorems():
    rep = _report(selfcheck.check_extremizers())
    assert rep["ok"], rep["detail"]


def test_criterion_06_kostant_oracle_equivalence():
    rep = _report(selfcheck.check_kostant_grids())
    assert rep["ok"], rep["detail"]


def test_criterion_07_plethysm_oracle_equivalence():
    rep = _report(selfcheck.check_plethysm_oracle())
    assert rep["ok"], rep["detail"]


def test_criterion_08_missing_points_suite():
    rep = _report(selfcheck.check_missing_points())
    assert rep["ok"], rep["detail"]


def test_criterion_09_qholonomic_structure():
    rep = _report(selfcheck.check_qholonomic())
    assert rep["fits_ok"], rep["detail"]
    assert rep["ok"], (
        "the stated 3<=n<=28 recursion range includes the k>n corner where "
        "the x-corrections land; expected red - see decisions ledger. "
        + rep["detail"])


def test_criterion_09s_qholonomic_sharp_range():
    rep = _report(selfcheck.check_qholonomic_substance())
    assert rep["ok"], rep["detail"]


def test_criterion_10_theta_identities():
    rep = _report(selfcheck.check_theta_identities())
    assert rep["ok"], rep["detail"]
