import pytest
from hypothesis import HealthCheck, settings

from svlab.polyalg import parse_poly, parse_unipoly
from svlab.variety import HypersurfaceFamily, VarietyModel
from svlab.nevan import reduce_representation

settings.register_profile(
    "svlab",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("svlab")


def variety(n, k, gens=()):
    return VarietyModel(n, k, [parse_poly(g, n + 1) for g in gens])


def family(texts, N, n):
    return HypersurfaceFamily([parse_poly(t, n + 1) for t in texts], N)


def curve(*comps):
    return reduce_representation([parse_unipoly(c) for c in comps])


@pytest.fixture
def conic():
    return variety(2, 1, ["x0*x2 - x1^2"])


@pytest.fixture
def twisted_cubic():
    return variety(3, 1, ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"])


@pytest.fixture
def plane():
    return variety(2, 2)
