"""Exact Laurent polynomials in one variable q over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


class LaurentPoly:
    """A finite sum of c_e q^e with rational c_e; immutable and canonical.

    Zero coefficients are never stored, so two polynomials are equal iff
    their term tuples are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        acc: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = Fraction(c)
            if c:
                acc[int(e)] = acc.get(int(e), Fraction(0)) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> LaurentPoly:
        obj = object.__new__(cls)
        obj._terms = tuple(sorted((e, c) for e, c in terms.items() if c))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({0: c})

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def coeff(self, e: int) -> Fraction:
        for ee, c in self._terms:
            if ee == e:
                return c
        return Fraction(0)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in o._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in o._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("only monomials are invertible")
            (e, c), = self._terms
            return LaurentPoly({-e * (-n): Fraction(1) / c ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by q^n."""
        return LaurentPoly._raw({e + n: c for e, c in self._terms})

    def invert_variable(self) -> LaurentPoly:
        """Substitute q -> q^{-1}."""
        return LaurentPoly._raw({-e: c for e, c in self._terms})

    def divmod(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Long division after shifting both operands to genuine polynomials.

        The remainder has max exponent below that of the (shifted) divisor.
        """
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPoly(), LaurentPoly()
        s_num, s_den = self.min_exp, other.min_exp
        num = {e - s_num: c for e, c in self._terms}
        den = {e - s_den: c for e, c in other._terms}
        dmax = max(den)
        lead = den[dmax]
        quot: dict[int, Fraction] = {}
        while num:
            top = max(num)
            if top < dmax:
                break
            c = num[top] / lead
            quot[top - dmax] = c
            for e, dc in den.items():
                k = e + top - dmax
                v = num.get(k, 0) - c * dc
                if v:
                    num[k] = v
                else:
                    num.pop(k, None)
        q = LaurentPoly._raw(quot).shift(s_num - s_den)
        r = LaurentPoly._raw(num).shift(s_num)
        return q, r

    def divexact(self, other: LaurentPoly) -> LaurentPoly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def evaluate(self, x):
        """Evaluate at x (Fraction, complex, or any ring element supporting ** and +)."""
        total = 0
        for e, c in self._terms:
            total = total + c * x ** e
        return total

    def at_q_equals_one(self) -> Fraction:
        return sum((c for _, c in self._terms), Fraction(0))

    def serialize(self) -> str:
        """Canonical text form: space separated exponent:numerator/denominator pairs."""
        return " ".join(f"{e}:{c.numerator}/{c.denominator}" for e, c in self._terms)

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        terms = {}
        for tok in text.split():
            e, c = tok.split(":")
            terms[int(e)] = Fraction(c)
        return cls(terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.serialize()!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
Q = LaurentPoly.monomial(1)


@lru_cache(maxsize=None)
def qint_poly(n: int) -> LaurentPoly:
    """[n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}, extended by [-n] = -[n]."""
    if n < 0:
        return -qint_poly(-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact_poly(r: int) -> LaurentPoly:
    if r < 0:
        raise ValueError("factorial of a negative integer")
    out = ONE
    for s in range(1, r + 1):
        out = out * qint_poly(s)
    return out


@lru_cache(maxsize=None)
def qbinom_poly(r: int, s: int) -> LaurentPoly:
    """Gaussian binomial via [r;s] = q^{-s}[r-1;s] + q^{r-s}[r-1;s-1]."""
    if s < 0 or s > r:
        raise ValueError(f"q-binomial needs 0 <= s <= r, got r={r}, s={s}")
    if s == 0 or s == r:
        return ONE
    return qbinom_poly(r - 1, s).shift(-s) + qbinom_poly(r - 1, s - 1).shift(r - s)


def qbracket_poly(z_exp: int, n: int) -> LaurentPoly:
    """[z+n]_q for an integer weight z, as a Laurent polynomial."""
    return qint_poly(z_exp + n)
