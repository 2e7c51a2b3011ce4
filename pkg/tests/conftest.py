import pytest
from hypothesis import settings
from hypothesis import strategies as st

from qnatural.alphaseries import AlphaSeries
from qnatural.qcore import QParams

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def p():
    return QParams.exact("1/4", "1/2")


@pytest.fixture
def pf():
    return QParams.floating(0.25, 0.5)


P = QParams.exact("1/4", "1/2")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def alpha_polys(max_order: int = 6, params: QParams = P):
    return st.lists(rationals, min_size=1, max_size=max_order + 1).map(
        lambda cs: AlphaSeries.from_coeffs(cs, params)
    )


def pad(f: AlphaSeries, order: int) -> AlphaSeries:
    return AlphaSeries.from_coeffs(list(f.coeffs), f.params, order)

