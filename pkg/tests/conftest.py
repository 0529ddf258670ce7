import pytest

from treeasym import counts_for, expand_variety
from treeasym.hp import agreement_digits

VARIETIES = ("polya", "identity", "hierarchy")


@pytest.fixture(scope="session")
def pipeline():
    """Memoized access to full expansion pipelines, keyed by configuration."""
    cache = {}

    def get(variety, L=4, N=200, D=60, K=None):
        key = (variety, L, N, D, K)
        if key not in cache:
            cache[key] = expand_variety(variety, L=L, N=N, D=D, K=K)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def counts500():
    return {v: counts_for(v, 500) for v in VARIETIES}


@pytest.fixture(scope="session")
def assert_digits():
    """Assert that a computed value matches a reference string to >= d digits."""

    def check(computed, reference, digits, ctx, label=""):
        ref = ctx.mpf(reference)
        got = agreement_digits(computed, ref, ctx)
        assert got >= digits, (
            f"{label}: only {got} matching digits (need {digits}); "
            f"computed {ctx.nstr(computed, digits + 4)} vs reference {reference}"
        )
        return got

    return check
