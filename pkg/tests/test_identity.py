from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from uqlab.errors import ParameterError
from uqlab.identity import (
    alpha_cross_backend,
    check_coproduct_f_power,
    choose_p,
    clearing_factor,
    shifted_product_rhs,
    factorial_form_classical,
    factorial_form_sides,
    cyclotomic,
    derived_rhs,
    derived_terms,
    fpower_coefficient_oracle,
    presum,
    closed_terms,
    vanishes_at_root,
    verify_identity,
)
from uqlab.laurent import LaurentPoly, qint_poly

FIXTURE = Path(__file__).parent / "fixtures" / "oracle.txt"


def _fixture_cases():
    for line in FIXTURE.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        head, poly = line.split("|")
        yield tuple(int(v) for v in head.split()), LaurentPoly.parse(poly.strip())


@pytest.mark.parametrize("case", list(_fixture_cases()), ids=lambda c: "-".join(map(str, c[0])))
def test_oracle_matches_frozen_fixture(case):
    (p, l, z1, z2), expected = case
    assert fpower_coefficient_oracle(p, l, z1, z2) == expected


def test_oracle_hand_expansion_smallest_case():
    # p = 3, l = 1, (z1, z2) = (4, 5): two terms [2][4] - q^{-6} [2]^2 [5].
    two = qint_poly(2)
    hand = two * qint_poly(4) - (two * two * qint_poly(5)).shift(-6)
    assert fpower_coefficient_oracle(3, 1, 4, 5) == hand


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_coproduct_power_expansion(k):
    assert check_coproduct_f_power(k)


def test_cyclotomic_polynomials():
    assert cyclotomic(3) == LaurentPoly({0: 1, 1: 1, 2: 1})
    assert vanishes_at_root(qint_poly(3), 3)
    assert not vanishes_at_root(qint_poly(2), 3)
    assert vanishes_at_root(qint_poly(10), 5)


@pytest.mark.parametrize("l,z1,z2", [(1, 4, 5), (2, 5, 7), (3, 6, 4), (4, 8, 8)])
def test_derived_identity_and_closed_terms(l, z1, z2):
    terms = derived_terms(l, z1, z2)
    assert sum(terms, LaurentPoly()) == derived_rhs(l, z1, z2)
    assert terms == closed_terms(l, z1, z2)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(0, 6), st.integers(0, 6))
def test_derived_identity_symmetric(l, a, b):
    z1, z2 = l + a, l + b
    assert sum(derived_terms(l, z1, z2), LaurentPoly()) == sum(derived_terms(l, z2, z1), LaurentPoly())


def test_printed_exponent_differs_off_the_root():
    p, l, z1, z2 = 5, 2, 5, 6
    oracle = fpower_coefficient_oracle(p, l, z1, z2)
    assert oracle == presum(p, l, z1, z2)
    printed = presum(p, l, z1, z2, printed_exponent=True)
    assert printed != oracle
    assert vanishes_at_root(printed - oracle, p)


def test_shifted_product_exponent():
    l, z1, z2 = 2, 5, 6
    lhs = sum(closed_terms(l, z1, z2), LaurentPoly())
    assert shifted_product_rhs(l, z1, z2, 2 * l * (l - 1)) == lhs
    assert shifted_product_rhs(l, z1, z2, 2 * l * (l + 1)) != lhs


def test_factorial_form_generic_q_counterexample():
    lhs, rhs = factorial_form_sides(1, 1, 1)
    assert lhs == LaurentPoly({0: 2})
    assert rhs == LaurentPoly({1: 1, -1: 1})
    assert lhs.at_q_equals_one() == rhs.at_q_equals_one()


@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
def test_factorial_form_classical(m, n, l):
    if l > min(m, n):
        return
    a, b = factorial_form_classical(m, n, l)
    assert a == b


@pytest.mark.parametrize("m,n,l", [(1, 1, 1), (3, 2, 2), (4, 5, 3)])
def test_factorial_form_weighted(m, n, l):
    lhs, rhs = factorial_form_sides(m, n, l, weighted=True)
    assert lhs == rhs


def test_verify_identity_report():
    rep = verify_identity(2, 5, 6)
    assert rep.passed
    assert rep.witness["derived"]["identity_exact"]
    assert rep.witness["factorial-form"]["generic_q"] is False


def test_choose_p_prefers_nonvanishing():
    p = choose_p(1, 4, 5)
    assert p > 1 and all((n % p) for n in (4, 4 + 5))
    assert choose_p(2, 6) not in (3,)  # 6 - 0 divisible by 3
    with pytest.raises(ParameterError):
        choose_p(13, 20)


def test_alpha_cross_backend_matches():
    out = alpha_cross_backend(2, 5, 6)
    assert out["exact"]["status"] == "match"
    assert out["float"]["status"] == "match"
    assert out["exact"]["nonzero"]


def test_clearing_factor():
    assert clearing_factor(2, 5) == qint_poly(5) * qint_poly(4)


def test_invalid_arguments():
    with pytest.raises(ParameterError):
        verify_identity(3, 2, 5)
    with pytest.raises(ParameterError):
        fpower_coefficient_oracle(3, 3, 4, 4)
