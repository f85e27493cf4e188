import pytest

from rct_hyper import HypParams, hyp2f1_one_minus

F_STAR = HypParams(1.0 / 3.0, 2.0 / 3.0, 1.0)
G_STAR = HypParams(1.0 / 3.0, 2.0 / 3.0, 2.0)


def star_values(grid, params=F_STAR):
    """Denominator values F*(r) over a grid, computed once per test."""
    return [hyp2f1_one_minus(params, 1.0 - r).value for r in grid]


@pytest.fixture(scope="session")
def canonical_grid():
    return [k / 100 for k in range(1, 100)]
