import pytest

from standext.koszul import (
    build_E_delta,
    build_E_nabla,
    check_conditions,
    check_koszul,
    delta_parity,
    kappa,
    kappa_tilde,
    quadratic_dual,
    total_grading,
    verify_hom_pattern,
    verify_main_theorem,
)
from standext.quasihereditary import check_qh

from conftest import PASSING_FIXTURES, QH_FIXTURES, algebra_for


@pytest.mark.parametrize("name", QH_FIXTURES)
def test_fixtures_are_koszul(name):
    report = check_koszul(algebra_for(name))
    assert report.ok and not report.truncated, report.witnesses


@pytest.mark.parametrize("name", PASSING_FIXTURES)
def test_conditions_pass(name):
    report = check_conditions(algebra_for(name))
    assert report.ok, report.witnesses
    assert not report.truncated


def test_conditions_fail_on_mixed_heights():
    report = check_conditions(algebra_for("a3-zero-mixed"))
    assert not report.ok
    assert report.passed == {"I": False, "II": True, "III": False, "IV": True}
    assert any("Δ(z)" in w for w in report.witnesses["I"])


@pytest.mark.parametrize("name", PASSING_FIXTURES)
def test_hom_pattern_height_identity(name):
    alg = algebra_for(name)
    ok_d, wit_d = verify_hom_pattern("delta", build_E_delta(alg), alg)
    ok_n, wit_n = verify_hom_pattern("nabla", build_E_nabla(alg), alg)
    assert ok_d, wit_d
    assert ok_n, wit_n


@pytest.mark.parametrize("name", PASSING_FIXTURES)
def test_main_theorem_pipeline_passes(name):
    report = verify_main_theorem(algebra_for(name))
    assert report.ok, (report.failed_stage, report.witnesses)
    assert report.duality.verdict == "explicit isomorphism"
    assert not report.truncated


def test_main_theorem_stops_at_qh():
    report = verify_main_theorem(algebra_for("sl2-regular-badht"))
    assert not report.ok
    assert report.failed_stage == "qh"
    assert report.koszul is None and report.conditions is None


def test_main_theorem_stops_at_conditions():
    report = verify_main_theorem(algebra_for("a3-zero-mixed"))
    assert not report.ok
    assert report.failed_stage == "conditions"
    assert report.duality is None


@pytest.mark.parametrize("name", PASSING_FIXTURES)
def test_total_grading_positive_and_height_gap(name):
    alg = algebra_for(name)
    pres_d = total_grading("delta", build_E_delta(alg), alg)
    pres_n = total_grading("nabla", build_E_nabla(alg), alg)
    for pres in (pres_d, pres_n):
        assert all(deg >= 0 for deg in pres.hilbert)
        assert pres.hilbert.get(0) == len(pres.objects)


def test_quadratic_dual_involution_on_signature():
    alg = algebra_for("sl2-regular")
    pres = total_grading("delta", build_E_delta(alg), alg)
    dual = quadratic_dual(pres)
    double = quadratic_dual(dual)
    assert {g: ends for g, ends in double.generators.items()} == pres.generators
    assert len(double.relations) == len(pres.relations)


def test_kappa_bookkeeping_identity():
    for ht in range(0, 6):
        for l in range(-10, 11):
            assert kappa(ht, l) - kappa_tilde(ht, l) == ht
            assert delta_parity(ht, l) == (ht - l) % 2
            assert kappa(ht, l) + kappa(ht, l + 1) in (ht - l - 1, ht - l)


def test_badht_witness_text():
    report = check_qh(algebra_for("sl2-regular-badht"))
    assert report.witnesses == ["S(v) occurs in Rad Δ(v)"]
