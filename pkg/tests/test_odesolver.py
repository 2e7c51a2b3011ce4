import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from qnatural.alphaseries import CapExp, Cos, Exp, Power, TimeExpr
from qnatural.errors import DomainError, MultiplicityError, UnsupportedError
from qnatural.odesolver import ODEProblem, char_poly, initial_values, residual, solve_ivp
from qnatural.polys import Poly
from qnatural.qcore import QParams
from qnatural.verification import example1, example2

F = Fraction


def test_char_poly_examples(p):
    assert char_poly(example1(p)[0]) == Poly((0, -6, 1, 1))
    assert char_poly(example2(p)[0]) == Poly((3, 1))
    assert char_poly(ODEProblem((F(1), F(0)), TimeExpr(), (F(2),))) == Poly((0, 1))


def test_example1(p):
    prob, want = example1(p)
    assert solve_ivp(prob, p) == want


def test_example2(p):
    prob, want = example2(p)
    assert solve_ivp(prob, p) == want


def test_constant_solution(p):
    prob = ODEProblem((F(1), F(0)), TimeExpr(), (F(7),))
    assert solve_ivp(prob, p) == TimeExpr.atom(Power(0), F(7))


@pytest.mark.parametrize("build", [example1, example2])
def test_residual_and_initial_values(p, build):
    prob, _ = build(p)
    f = solve_ivp(prob, p)
    assert residual(prob, f, p, 24).is_zero()
    assert initial_values(f, prob.order, p) == list(prob.init)


roots = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@given(st.sets(roots, min_size=1, max_size=3), st.data())
def test_random_homogeneous_problems(rs, data):
    # a_0 prod (w - r) with random initial data
    poly = Poly.from_roots(sorted(rs))
    coeffs = tuple(poly[len(rs) - j] for j in range(len(rs) + 1))
    init = tuple(data.draw(st.lists(roots, min_size=len(rs), max_size=len(rs))))
    prob = ODEProblem(coeffs, TimeExpr(), init)
    f = solve_ivp(prob, P)
    assert residual(prob, f, P, 16).is_zero()
    assert initial_values(f, prob.order, P) == list(init)


def test_forced_problem_with_mixed_rhs(p):
    rhs = TimeExpr.of([(F(2), Power(1)), (F(1), Exp(F(1, 2))), (F(-1), Cos(F(1)))])
    prob = ODEProblem((F(1), F(0), F(4)), rhs, (F(1), F(0)))
    f = solve_ivp(prob, p)
    assert residual(prob, f, p, 20).is_zero()
    assert initial_values(f, 2, p) == [1, 0]


def test_resonance_is_diagnosed(p):
    prob = ODEProblem((F(1), F(-2)), TimeExpr.atom(Exp(F(2))), (F(0),))
    with pytest.raises(MultiplicityError, match="resonance"):
        solve_ivp(prob, p)


def test_bad_problems(p):
    with pytest.raises(DomainError):
        ODEProblem((F(1),), TimeExpr(), ())
    with pytest.raises(DomainError):
        ODEProblem((F(0), F(1)), TimeExpr(), (F(1),))
    with pytest.raises(DomainError):
        ODEProblem((F(1), F(1)), TimeExpr(), ())



def test_capital_exponential_forcing_unsupported(p):
    prob = ODEProblem((F(1), F(1)), TimeExpr.atom(CapExp(F(1))), (F(0),))
    with pytest.raises(UnsupportedError):
        solve_ivp(prob, p)


def test_classical_limit():
    p = QParams.exact("999/1000", 1, "999/1000")
    prob, _ = example1(p)
    s = solve_ivp(prob, p).to_series(8, p)
    for n in range(7):
        classical = F(int(n == 0), 6) + F((-3) ** n, 3) + F(2**n, 2)
        got = s[n] * math.factorial(n)
        assert abs(got - classical) <= F(2, 100) * abs(classical)
