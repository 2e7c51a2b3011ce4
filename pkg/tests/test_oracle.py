import math
from fractions import Fraction

import pytest

from qnatural.alphaseries import Exp, inv_e_kernel, series_eval
from qnatural.oracle import (
    beta_numeric,
    gamma_numeric,
    jackson_integral_0_1,
    jackson_integral_0_inf,
    kernel_grid_scale,
    natural_numeric,
)
from qnatural.qcore import beta_qa, gamma_qa, shifted_power


def test_gamma_integrals(p):
    one = jackson_integral_0_inf(lambda x: inv_e_kernel(0.25 * x, p), p)
    assert abs(one.value - 1) < 1e-6 and one.converged
    two = jackson_integral_0_inf(lambda x: x**0.5 * inv_e_kernel(0.25 * x, p), p)
    assert abs(two.value - 2 / 3) < 1e-6
    assert jackson_integral_0_inf(lambda x: 0.0, p).value == 0


def test_unaligned_grid_is_reported(p):
    rep = jackson_integral_0_inf(lambda x: inv_e_kernel(0.25 * x, p), p, J=30, scale=1.0)
    assert not rep.converged
    rep = jackson_integral_0_inf(lambda x: inv_e_kernel(0.25 * x, p), p, scale=1.0)
    assert not rep.converged


def test_unit_interval_integrals(p):
    assert abs(jackson_integral_0_1(lambda x: 1.0, p).value - 1.5) < 1e-8
    assert jackson_integral_0_1(lambda x: 0.0, p).value == 0

    def b22(x):
        X = x**0.5
        return X * shifted_power(1.0, -0.5 * X, 1, p)

    assert abs(jackson_integral_0_1(b22, p).value - float(beta_qa(2, 2, p))) < 1e-8


def test_grid_exactness(p):
    c = kernel_grid_scale(p)
    point = c * 0.25**3

    def spike(x):
        return 1.0 if math.isclose(x, point, rel_tol=1e-12) else 0.0

    rep = jackson_integral_0_inf(spike, p)
    assert rep.value == pytest.approx(0.75 * point**0.5, rel=1e-15)


def test_tail_bound_covers_truncation(p):
    rep = jackson_integral_0_1(lambda x: 1.0, p, J=10)
    err = 1.5 - rep.value
    assert err > 0
    assert rep.tail_bound >= err * (1 - 1e-12)
    assert not rep.converged


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_gamma_numeric(p, n):
    rep = gamma_numeric(n, p)
    want = float(gamma_qa(n, p))
    assert abs(rep.value - want) < 1e-6 * want


def test_beta_numeric(p):
    for m in range(1, 6):
        for n in range(1, 6):
            assert abs(beta_numeric(m, n, p).value - float(beta_qa(m, n, p))) < 1e-8


def test_natural_numeric_examples(p):
    rep = natural_numeric(lambda t: 1.0, 1, 2, p)
    assert abs(rep.value - 2**-0.5) < 1e-5
    rep = natural_numeric(lambda t: t**0.5, 1, 2, p)
    assert abs(rep.value - 1 / 3) < 1e-5
    beta = Fraction(1, 4)
    series = Exp(beta).series(40, p)
    rep = natural_numeric(lambda t: series_eval(series, t).value, 1, 2, p)
    assert abs(rep.value - 1 / (2**0.5 - 0.25)) < 1e-4


def test_natural_numeric_rejects_bad_arguments(p):
    with pytest.raises(ValueError):
        natural_numeric(lambda t: 1.0, 1, 0, p)


def test_report_json(p):
    d = gamma_numeric(2, p).to_json()
    assert set(d) == {"value", "terms_used", "tail_bound", "converged"}
