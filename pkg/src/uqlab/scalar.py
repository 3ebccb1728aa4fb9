"""Coefficient fields and q-combinatorics at a root of unity.

Two backends share one interface through :class:`FieldSpec`:

* ``exact``: elements of Q(zeta_p) for prime p, stored as :class:`Cyclo`.
* ``float``: Python ``complex`` with a relative tolerance.

Weights are never stored directly; a weight lambda enters only through its
exponential coordinate z = q^lambda, so every bracket below takes ``z``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import ParameterError
from .laurent import LaurentPoly, qbinom_poly

MAX_P = 13


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


class Cyclo:
    """Element of Q(zeta_p), p an odd prime.

    Stored as integer numerators on the basis 1, zeta, ..., zeta^{p-2} over a
    positive common denominator, reduced so that gcd(num..., den) == 1.
    """

    __slots__ = ("p", "num", "den", "_hash")

    def __init__(self, p: int, num, den: int = 1):
        num = tuple(int(c) for c in num)
        if len(num) != p - 1:
            raise ValueError(f"expected {p - 1} coefficients, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.p, self.num, self.den = _normalize(p, num, int(den))
        self._hash = None

    @classmethod
    def _make(cls, p: int, num: tuple, den: int) -> Cyclo:
        obj = object.__new__(cls)
        obj.p, obj.num, obj.den = _normalize(p, num, den)
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, p: int, value) -> Cyclo:
        value = Fraction(value)
        return cls._make(p, (value.numerator,) + (0,) * (p - 2), value.denominator)

    @classmethod
    def root_power(cls, p: int, e: int) -> Cyclo:
        """zeta_p^e."""
        e %= p
        if e == p - 1:
            return cls._make(p, (-1,) * (p - 1), 1)
        num = [0] * (p - 1)
        num[e] = 1
        return cls._make(p, tuple(num), 1)

    @classmethod
    def from_cyclic(cls, p: int, coeffs, den: int = 1) -> Cyclo:
        """Build from coefficients on 1, zeta, ..., zeta^{p-1} (length p)."""
        top = coeffs[p - 1]
        return cls._make(p, tuple(coeffs[i] - top for i in range(p - 1)), den)

    def _coerce(self, other) -> Cyclo | None:
        if isinstance(other, Cyclo):
            if other.p != self.p:
                raise ValueError(f"mixing Q(zeta_{self.p}) and Q(zeta_{other.p})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.rational(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyclo._make(self.p, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        d1, d2 = self.den, o.den
        return Cyclo._make(self.p, tuple(a * d2 + b * d1 for a, b in zip(self.num, o.num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        return Cyclo._make(self.p, tuple(-a for a in self.num), self.den)

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
        if isinstance(other, int):
            return Cyclo._make(self.p, tuple(a * other for a in self.num), self.den)
        if isinstance(other, Fraction):
            return Cyclo._make(
                self.p, tuple(a * other.numerator for a in self.num), self.den * other.denominator
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        acc[(i + j) % p] += a * b
        return Cyclo.from_cyclic(p, acc, self.den * o.den)

    __rmul__ = __mul__

    def conjugate_by(self, k: int) -> Cyclo:
        """Galois automorphism zeta -> zeta^k."""
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.num):
            acc[(i * k) % p] += a
        return Cyclo.from_cyclic(p, acc, self.den)

    def inverse(self) -> Cyclo:
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_p)")
        return _cyclo_inverse(self.p, self.num, self.den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> Cyclo:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Cyclo.rational(self.p, 1)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclo):
            return self.p == other.p and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return (
                self.num[0] == f.numerator
                and self.den == f.denominator
                and not any(self.num[1:])
            )
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.num, self.den))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * w**i for i, a in enumerate(self.num)) / self.den

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def __repr__(self) -> str:
        return f"Cyclo({self.p}, {self.num}, {self.den})"

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.num):
            if not a:
                continue
            c = Fraction(a, self.den)
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")


def _normalize(p: int, num: tuple, den: int) -> tuple[int, tuple, int]:
    if den < 0:
        num, den = tuple(-a for a in num), -den
    g = math.gcd(den, *num)
    if g > 1:
        num, den = tuple(a // g for a in num), den // g
    if not any(num):
        den = 1
    return p, num, den


@lru_cache(maxsize=65536)
def _cyclo_inverse(p: int, num: tuple, den: int) -> Cyclo:
    a = Cyclo._make(p, num, den)
    others = Cyclo.rational(p, 1)
    for k in range(2, p):
        others = others * a.conjugate_by(k)
    norm = (a * others).to_fraction()
    return others * (1 / norm)


Scalar = Cyclo | complex

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field with q a primitive p-th root of unity, q = zeta_p^k."""

    backend: str = "exact"
    p: int = 3
    k: int = 1
    tol: float = 1e-9

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise ParameterError(f"unknown backend {self.backend!r}")
        if self.p < 3 or self.p % 2 == 0:
            raise ParameterError(f"p must be an odd integer >= 3, got {self.p}")
        if self.backend == "exact" and not is_prime(self.p):
            raise ParameterError(f"exact backend needs p prime, got {self.p}")
        if math.gcd(self.k, self.p) != 1:
            raise ParameterError(f"k={self.k} is not coprime to p={self.p}")
        if self.backend == "float" and not self.tol > 0:
            raise ParameterError("float backend needs tol > 0")

    @property
    def exact(self) -> bool:
        return self.backend == "exact"

    # Constants.

    @cached_property
    def zero(self):
        return Cyclo.rational(self.p, 0) if self.exact else 0j

    @cached_property
    def one(self):
        return Cyclo.rational(self.p, 1) if self.exact else 1 + 0j

    @cached_property
    def q(self):
        return self.qpow(1)

    @cached_property
    def _bracket_denominator_inv(self):
        return self.inv(self.q - self.qpow(-1))

    def qpow(self, n: int):
        """q^n, computed without accumulating rounding on the float side."""
        e = (self.k * n) % self.p
        if self.exact:
            return Cyclo.root_power(self.p, e)
        return cmath.exp(2j * cmath.pi * e / self.p)

    def w_power(self, n: int):
        """zeta_p^n (the literal symbol w), independent of k."""
        if self.exact:
            return Cyclo.root_power(self.p, n)
        return cmath.exp(2j * cmath.pi * (n % self.p) / self.p)

    def const(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Cyclo):
            if not self.exact:
                return value.to_complex()
            if value.p != self.p:
                raise ParameterError(f"element of Q(zeta_{value.p}) used with p={self.p}")
            return value
        if self.exact:
            if isinstance(value, complex):
                raise ParameterError("complex literal in exact backend")
            if isinstance(value, float):
                raise ParameterError("float literal in exact backend; use a rational")
            return Cyclo.rational(self.p, value)
        return complex(value)

    def parse(self, literal: str):
        """Parse a scalar literal.

        Accepted: rationals ``a/b``; cyclotomic sums ``c0+c1*w+c2*w^2`` with
        ``w`` = zeta_p (``q`` is also accepted and means zeta_p^k); complex
        ``a+bi`` on the float backend only.
        """
        text = literal.replace(" ", "")
        if not text:
            raise ParameterError("empty scalar literal")
        total = self.zero
        pos = 0
        for m in _TERM.finditer(text):
            if m.start() != pos:
                raise ParameterError(f"cannot parse scalar literal {literal!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            total = total + self._parse_term(m.group(2), literal) * sign
        if pos != len(text):
            raise ParameterError(f"cannot parse scalar literal {literal!r}")
        return total

    def _parse_term(self, term: str, literal: str):
        coef_txt, _, mono = term.partition("*")
        if not mono and coef_txt[-1:] in "wq" and coef_txt:
            coef_txt, mono = "1", coef_txt
        elif not mono and "^" in coef_txt:
            coef_txt, mono = "1", coef_txt
        try:
            if coef_txt.endswith("i") or coef_txt.endswith("j"):
                if self.exact:
                    raise ParameterError(f"complex literal {literal!r} needs the float backend")
                coef = complex(float(coef_txt[:-1] or 1)) * 1j
            elif self.exact:
                coef = Cyclo.rational(self.p, Fraction(coef_txt))
            else:
                coef = complex(float(Fraction(coef_txt)) if "/" in coef_txt else float(coef_txt))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse scalar literal {literal!r}") from exc
        if not mono:
            return coef
        sym, _, exp_txt = mono.partition("^")
        try:
            e = int(exp_txt) if exp_txt else 1
        except ValueError as exc:
            raise ParameterError(f"bad exponent in {literal!r}") from exc
        if sym == "w":
            return coef * self.w_power(e)
        if sym == "q":
            return coef * self.qpow(e)
        raise ParameterError(f"unknown symbol {sym!r} in {literal!r}")

    # Arithmetic helpers.

    def inv(self, a):
        if self.exact:
            return a.inverse()
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def magnitude(self, a) -> float:
        return abs(a.to_complex()) if isinstance(a, Cyclo) else abs(a)

    def to_complex(self, a) -> complex:
        if isinstance(a, Cyclo):
            # Embedding sending zeta_p to exp(2 pi i/p), so q = zeta^k matches the float q.
            return a.to_complex()
        return complex(a)

    def is_zero(self, a, scale: float = 1.0) -> bool:
        if self.exact:
            return not a
        return bool(abs(a) <= self.tol * max(1.0, scale))

    def eq(self, a, b) -> bool:
        if self.exact:
            return a == b
        return bool(abs(a - b) <= self.tol * max(1.0, abs(a), abs(b)))

    def format(self, a) -> str:
        if isinstance(a, complex):
            return f"{a.real:.12g}{a.imag:+.12g}i"
        return str(a)

    def describe(self) -> dict:
        d = {"backend": self.backend, "p": self.p, "k": self.k}
        if not self.exact:
            d["tol"] = self.tol
        return d

    def evaluate_poly(self, poly: LaurentPoly):
        """Evaluate a Laurent polynomial in q at this field's q."""
        total = self.zero
        for e, c in poly.terms:
            total = total + self.qpow(e) * (c if self.exact else float(c))
        return total


def qint(n: int, field: FieldSpec):
    """[n]_q = (q^n - q^{-n})/(q - q^{-1})."""
    return (field.qpow(n) - field.qpow(-n)) * field._bracket_denominator_inv


def qfact(r: int, field: FieldSpec):
    if r < 0:
        raise ParameterError(f"q-factorial of negative integer {r}")
    out = field.one
    for s in range(1, r + 1):
        out = out * qint(s, field)
    return out


def qbinom(r: int, s: int, field: FieldSpec):
    """Gaussian binomial [r; s] expanded as a Laurent polynomial, then evaluated."""
    if s < 0 or s > r:
        raise ParameterError(f"q-binomial needs 0 <= s <= r, got r={r}, s={s}")
    return field.evaluate_poly(qbinom_poly(r, s))


def qbracket(z, n: int, field: FieldSpec):
    """[lambda + n]_q in exponential coordinates, z = q^lambda."""
    if field.is_zero(z):
        raise ParameterError("weight parameter z must be nonzero")
    zq = z * field.qpow(n)
    return (zq - field.inv(zq)) * field._bracket_denominator_inv


def check_nonzero(field: FieldSpec, **values) -> None:
    for name, v in values.items():
        if field.is_zero(v):
            raise ParameterError(f"parameter {name} must be nonzero")
