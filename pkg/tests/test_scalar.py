from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqlab.errors import ParameterError
from uqlab.scalar import Cyclo, FieldSpec, qbinom, qbracket, qfact, qint

from conftest import field


def test_qint_at_cube_root():
    f = field("exact", 3)
    # q + q^{-1} = -1 for a primitive cube root.
    assert qint(2, f) == f.const(-1)
    assert qint(3, f) == f.zero
    assert qint(1, f) == f.one


def test_qint_vanishes_exactly_at_multiples_of_p():
    for p in (3, 5, 7):
        f = field("exact", p)
        for n in range(-2 * p, 2 * p + 1):
            assert (qint(n, f) == f.zero) == (n % p == 0)


def test_qbinom_vanishes_at_p_choose_1():
    f = field("exact", 3)
    assert qbinom(3, 1, f) == f.zero
    assert qbinom(4, 0, f) == f.one


def test_qfact_negative_rejected():
    with pytest.raises(ParameterError):
        qfact(-1, field("exact", 3))


def test_qbracket_reference_value():
    f = field("exact", 3)
    # [lambda] with q^lambda = 2: (2 - 1/2)/(q - q^{-1}), and q - q^{-1} = 2w + 1.
    w = f.w_power(1)
    assert qbracket(f.const(2), 0, f) * (w * 2 + 1) == f.const(Fraction(3, 2))


def test_bracket_zero_weight_rejected():
    f = field("exact", 3)
    with pytest.raises(ParameterError):
        qbracket(f.zero, 1, f)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cyclo_inverse(p):
    f = field("exact", p)
    for lit in ("2", "1+w", "3-2*w^2", "1/3+w+w^2"):
        a = f.parse(lit)
        assert a * a.inverse() == f.one


def test_root_relations():
    f = field("exact", 5)
    w = f.w_power(1)
    assert w**5 == f.one
    assert sum((w**i for i in range(5)), f.zero) == f.zero


def test_k_selects_root():
    f = FieldSpec("exact", 5, 2)
    assert f.q == f.w_power(2)
    assert f.parse("q") == f.w_power(2)


def test_bad_fields():
    for args in (("exact", 4), ("exact", 9), ("float", 2), ("exact", 3, 3), ("nope", 3)):
        with pytest.raises(ParameterError):
            FieldSpec(*args)


def test_parse_errors():
    f = field("exact", 3)
    for lit in ("", "abc", "1+", "2*z", "1.5+i"):
        with pytest.raises(ParameterError):
            f.parse(lit)
    with pytest.raises(ParameterError):
        f.const(1.5)


def test_float_matches_exact_embedding():
    fe, ff = field("exact", 7), field("float", 7)
    a = fe.parse("1/2+3*w^3-w^5")
    b = ff.parse("1/2+3*w^3-w^5")
    assert abs(a.to_complex() - b) < 1e-12
    assert abs(qint(3, fe).to_complex() - qint(3, ff)) < 1e-12


small = st.integers(-6, 6)


@given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4), st.integers(1, 4))
def test_cyclo_field_axioms(a, b, d):
    p = 5
    x, y = Cyclo(p, a, d), Cyclo(p, b, 1)
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if x:
        assert x * x.inverse() == Cyclo.rational(p, 1)
    # Galois-embedding agrees with complex arithmetic.
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_qint_antisymmetry_and_additivity(m, n):
    f = field("exact", 5)
    assert qint(-m, f) == -qint(m, f)
    # [m+n] = q^n [m] + q^{-m} [n]
    assert qint(m + n, f) == f.qpow(n) * qint(m, f) + f.qpow(-m) * qint(n, f)
