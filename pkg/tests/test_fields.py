from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cm_degen.fields import QI, GaussianRational, PrimeField, nullspace, parse_field, rank

small = st.integers(-6, 6)
gauss = st.builds(GaussianRational, small, small)


@given(gauss, gauss, gauss)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == GaussianRational()
    if a:
        assert a * a.inverse() == GaussianRational(1)


@given(st.integers(0, 200), st.integers(0, 200))
def test_prime_field_axioms(x, y):
    F = PrimeField(13)
    a, b = F.gauss(x), F.gauss(y)
    assert a * b == b * a
    if a:
        assert a * a.inverse() == F.one()


def test_sqrt_minus_one():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    for p in (5, 13, 101):
        F = PrimeField(p)
        assert F.gauss(0, 1) * F.gauss(0, 1) == F.gauss(-1)


def test_field_parsing():
    assert parse_field("qi") is QI
    assert parse_field("fp:13").p == 13
    for bad in ("fp:7", "fp:15", "rational"):
        with pytest.raises(ValueError):
            parse_field(bad)


def _to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(v.re.numerator, v.re.denominator)
                          + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator) for v in r]
                         for r in rows])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_sympy(nr, nc, data):
    rows = [[GaussianRational(Fraction(data.draw(small), data.draw(st.integers(1, 3))), data.draw(small))
             for _ in range(nc)] for _ in range(nr)]
    # force some dependence
    if nr > 1:
        rows[-1] = [a + b for a, b in zip(rows[0], rows[1 % nr])]
    assert rank(rows) == _to_sympy(rows).rank()


def test_nullspace_is_annihilated():
    A = [[QI.gauss(1), QI.gauss(2), QI.gauss(0, 1)], [QI.gauss(2), QI.gauss(4), QI.gauss(0, 2)]]
    basis = nullspace(A, 3, QI)
    assert len(basis) == 2
    for v in basis:
        for row in A:
            assert sum((a * b for a, b in zip(row, v)), GaussianRational()) == GaussianRational()
