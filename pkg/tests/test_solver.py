from fractions import Fraction

import pytest

from treeasym.counts import counts_for
from treeasym.hp import agreement_digits
from treeasym.solver import NoBracketError, solve_rho
from treeasym.varieties import get_variety

from reference_values import RHO_50


@pytest.fixture(scope="module")
def rho_results(pipeline_counts):
    out = {}
    for variety in ("polya", "identity", "hierarchy"):
        spec = get_variety(variety)
        out[variety] = solve_rho(spec, pipeline_counts[variety], 200, 60)
    return out


@pytest.fixture(scope="module")
def pipeline_counts():
    return {v: counts_for(v, 200) for v in ("polya", "identity", "hierarchy")}


@pytest.mark.parametrize("variety", ["polya", "identity", "hierarchy"])
def test_reference_values_30_digits(rho_results, variety):
    result = rho_results[variety]
    ctx = result.ctx
    assert agreement_digits(result.rho, ctx.mpf(RHO_50[variety]), ctx) >= 30


def test_certification_metadata(rho_results):
    for result in rho_results.values():
        assert 15 <= result.certified_digits <= 60
        assert result.n_used == 200
        assert 0 < result.iterations <= 80
        assert 0 < result.rho < 1


def test_ordering_of_singularities(rho_results):
    assert rho_results["hierarchy"].rho < rho_results["polya"].rho < rho_results["identity"].rho


def test_polya_below_inverse_e(rho_results):
    result = rho_results["polya"]
    assert result.rho <= result.ctx.exp(-1)


def test_self_consistency_across_orders(pipeline_counts, rho_results):
    spec = get_variety("polya")
    at_150 = solve_rho(spec, pipeline_counts["polya"], 150, 60)
    at_200 = rho_results["polya"]
    assert agreement_digits(at_150.rho, at_200.rho, at_200.ctx) >= 20


def test_no_bracket_error_carries_diagnostics(pipeline_counts):
    spec = get_variety("polya")
    with pytest.raises(NoBracketError, match="no sign change"):
        solve_rho(spec, pipeline_counts["polya"], 200, 60,
                  bracket=(Fraction(1, 100), Fraction(2, 100)))


def test_input_validation(pipeline_counts):
    spec = get_variety("polya")
    with pytest.raises(ValueError, match="too small"):
        solve_rho(spec, pipeline_counts["polya"], 30, 60)
    with pytest.raises(ValueError, match="too small"):
        solve_rho(spec, pipeline_counts["polya"], 200, 20)
    with pytest.raises(ValueError, match="counts cover"):
        solve_rho(spec, counts_for("polya", 100), 150, 60)
