from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from qnatural.alphaseries import Cos, Exp, Power, Sin, TimeExpr
from qnatural.errors import DegreeError, MultiplicityError, UnsupportedError, UnsupportedFactorError
from qnatural.inverse import PoleAtZero, Quadratic, SimplePole, invert, partial_fractions, recombine
from qnatural.oracle import natural_numeric
from qnatural.polys import Poly, RationalFn
from qnatural.qcore import QParams, q_alpha_factorial
from qnatural.transform import TransformExpr, natural_time_expr


def rf(num, den):
    return RationalFn(Poly(tuple(Fraction(c) for c in num)), Poly(tuple(Fraction(c) for c in den)))


EX1 = rf([-1, 1, 1], [0, -6, 1, 1])  # (w^2 + w - 1) / (w (w^2 + w - 6))
EX2 = rf([50, 0, 6], [12, 4, 3, 1])  # (6w^2 + 50) / ((w + 3)(w^2 + 4))


def test_example1_decomposition():
    terms = partial_fractions(EX1)
    assert set(terms) == {
        PoleAtZero(1, Fraction(1, 6)),
        SimplePole(Fraction(-3), Fraction(1, 3)),
        SimplePole(Fraction(2), Fraction(1, 2)),
    }
    assert recombine(terms) == EX1


def test_example2_decomposition():
    terms = partial_fractions(EX2)
    assert set(terms) == {SimplePole(Fraction(-3), Fraction(8)), Quadratic(Fraction(4), Fraction(-2), Fraction(6))}
    assert recombine(terms) == EX2


def test_single_pole_at_zero():
    assert partial_fractions(rf([1], [0, 1])) == [PoleAtZero(1, Fraction(1))]
    assert partial_fractions(RationalFn.zero()) == []


def test_invert_examples(p):
    assert invert(TransformExpr(1, rf([1], [0, 1])), p) == TimeExpr.atom(Power(0))
    want1 = TimeExpr.of([(Fraction(1, 6), Power(0)), (Fraction(1, 3), Exp(-3)), (Fraction(1, 2), Exp(2))])
    assert invert(TransformExpr(1, EX1), p) == want1
    want2 = TimeExpr.of([(8, Exp(-3)), (-2, Cos(2)), (3, Sin(2))])
    assert invert(TransformExpr(1, EX2), p) == want2


def test_higher_poles_at_zero(p):
    # 1/w^3 is the transform of t^{2 alpha} / [2 alpha]!
    e = invert(TransformExpr(1, rf([1], [0, 0, 0, 1])), p)
    assert e == TimeExpr.of([(1 / q_alpha_factorial(2, p), Power(2))])


def test_irrational_rate_warns(p):
    e = invert(TransformExpr(1, rf([0, 1], [2, 0, 1])), p)
    assert e.warnings
    (coef, atom), = e.terms
    assert atom.kind == "cos" and abs(atom.value - 2**0.5) < 1e-15


@pytest.mark.parametrize(
    "phi, err",
    [
        (rf([1], [1, -2, 1]), MultiplicityError),  # (w - 1)^2
        (rf([1], [16, 0, 8, 0, 1]), MultiplicityError),  # (w^2 + 4)^2
        (rf([1], [1, 1, 1]), UnsupportedFactorError),  # w^2 + w + 1
        (rf([1], [-2, 0, 1]), UnsupportedFactorError),  # w^2 - 2
        (rf([1, 0, 1], [1, 1]), DegreeError),
    ],
)
def test_unsupported_denominators(phi, err):
    with pytest.raises(err):
        partial_fractions(phi)


def test_invert_rejects_tails_and_homogeneity(p):
    with pytest.raises(UnsupportedError):
        invert(TransformExpr(2, rf([1], [0, 1])), p)
    with pytest.raises(UnsupportedError):
        invert(TransformExpr(1, RationalFn.zero(), (Fraction(1), Fraction(1))), p)


rates = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda b: b != 0)
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(lambda c: c != 0)


@st.composite
def time_exprs(draw):
    pairs = []
    for n in draw(st.sets(st.integers(min_value=0, max_value=4), max_size=3)):
        pairs.append((draw(coefs), Power(n)))
    for b in draw(st.sets(rates, max_size=3)):
        pairs.append((draw(coefs), Exp(b)))
    for b in draw(st.sets(st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]), max_size=2)):
        pairs.append((draw(coefs), Cos(b)))
        pairs.append((draw(coefs), Sin(b)))
    return TimeExpr.of(pairs)


@given(time_exprs())
def test_round_trip(e):
    assert invert(natural_time_expr(e, P), P) == e


@given(time_exprs())
def test_recombination(e):
    phi = natural_time_expr(e, P).phi
    assert recombine(partial_fractions(phi)) == phi


def test_float_mode_decomposition():
    pf = QParams.floating(0.25, 0.5)
    phi = RationalFn(Poly((50.0, 0.0, 6.0)), Poly((12.0, 4.0, 3.0, 1.0)))
    e = invert(TransformExpr(1, phi), pf)
    got = {a.kind: (c, a.value) for c, a in e.terms}
    assert abs(got["exp"][0] - 8) < 1e-9 and abs(got["exp"][1] + 3) < 1e-9
    assert abs(got["cos"][0] + 2) < 1e-9 and abs(got["sin"][0] - 3) < 1e-9


def test_inverse_then_numeric_transform(p):
    R = TransformExpr(1, EX2)
    e = invert(R, p)
    u, s = 1, 3
    rep = natural_numeric(lambda t: e.evaluate(t, p), u, s, p)
    want = R.evaluate(u, s, p)
    assert abs(rep.value - want) < 1e-5 * abs(want)
