"""Reference closed forms in their printed shape, in exponential coordinates.

A weight lambda_k enters only through z_k = q^{lambda_k}; [lambda + n] is
``qbracket(z, n)`` and q^{a lambda_1 + b lambda_2 + c} is z1^a z2^b q^c.
Every function returns ``None`` when the formula divides by zero, so callers
can report a comparison as undefined instead of guessing an intent.

The printed normalisation differs from ours: printed Omega_l equals
``omega_scale(l)`` times our Omega_l (pinned at (0, l)), and printed Phi_l
equals ``phi_scale(l)`` times our Phi_l (pinned at (p-1, l)).
"""

from __future__ import annotations

from .scalar import FieldSpec, qbracket, qfact, qint


class _Undefined(Exception):
    pass


class Forms:
    def __init__(self, field: FieldSpec, z1, z2, x=None, y=None):
        self.f = field
        self.z1, self.z2, self.x, self.y = z1, z2, x, y
        self.zz = z1 * z2

    # Small helpers.

    def q(self, n: int):
        return self.f.qpow(n)

    def B(self, z, n: int):
        return qbracket(z, n, self.f)

    def n(self, k: int):
        return qint(k, self.f)

    def inv(self, a):
        if self.f.is_zero(a):
            raise _Undefined
        return self.f.inv(a)

    def div(self, a, b):
        return a * self.inv(b)

    def _safe(self, fn, *args):
        try:
            return fn(*args)
        except _Undefined:
            return None

    def zpow(self, z, e: int):
        return z**e

    # Normalisations.

    def omega_scale(self, l: int):
        """Printed c_{0,l}; the product over j = 0..0 gives [lambda2-l]/[lambda1+1]."""
        return self._safe(lambda: self.div(self.B(self.z2, -l), self.B(self.z1, 1)))

    def phi_scale(self, l: int):
        """Printed d_{p-1,l} = (-1)^l [l] q^{l(l+1)} q^{lambda1 (p-1-l)}."""
        p = self.f.p
        v = self.n(l) * self.q(l * (l + 1)) * self.zpow(self.z1, p - 1 - l) * (-1) ** l
        return None if self.f.is_zero(v) else v

    # Highest and lowest weight vectors.

    def c(self, l: int, i: int):
        """c_{i,l-i} with the product over j = 0..i as printed."""

        def val():
            prod = self.f.one
            for j in range(i + 1):
                prod = prod * self.div(self.B(self.z2, -l + j), self.B(self.z1, 1 - j))
            return prod * self.q(i * (2 * l - i - 1)) * self.zpow(self.z2, -i) * (-1) ** i

        return self._safe(val)

    def d(self, l: int, i: int):
        """d_{i,l+p-1-i}; the pinned entry i = l is printed as [l]."""
        p = self.f.p
        if i == l:
            return self.n(l)

        def val():
            prod = self.f.one
            for j in range(l + 1, i + 1):
                prod = prod * self.div(self.n(j), self.n(l + p - j))
            e = i - l
            return prod * self.q(e * (-i - l - 1)) * self.zpow(self.z1, e) * (-1) ** e

        return self._safe(val)

    # Single-term actions of f0, e0 and their e^2 / f^2 companions.

    def f0_omega(self, l: int):
        f, x, y = self.f, self.x, self.y
        return self.q(1) * self.B(self.z2, -l) * (
            -f.inv(x) * f.inv(self.z2) * self.q(2 * l - 2) + f.inv(y) * self.z1
        )

    def e0_phi(self, l: int):
        x, y = self.x, self.y
        return self.q(-3) * self.n(l) * (x * self.f.inv(self.z2) - y * self.z1 * self.q(-2 * l))

    def ee_e0_omega(self, l: int):
        x, y = self.x, self.y
        return (
            self.q(-1) * self.n(2) * self.B(self.z2, -l)
            * (x * self.z1 - y * self.f.inv(self.z2) * self.q(2 * l - 2))
        )

    def ff_f0_phi(self, l: int):
        f, x, y = self.f, self.x, self.y
        return self.n(2) * self.n(l) * (
            -f.inv(x) * self.z1 * self.q(-2 * l - 1) + f.inv(y) * f.inv(self.z2) * self.q(-1)
        )

    # Three-term expansion coefficients beta (e0 on Omega) and gamma (f0 on Phi).

    def A(self, l: int, za, zb):
        return self.B(za, 1) * self.B(za * zb, 1 - 2 * l) - self.n(1) * self.B(zb, 1)

    def A_l(self, l: int):
        return self.A(l, self.z1, self.z2)

    def beta(self, l: int, kind: str):
        return self._safe(getattr(self, "_beta_" + kind), l)

    def gamma(self, l: int, kind: str):
        return self._safe(getattr(self, "_gamma_" + kind), l)

    def _beta_lm(self, l):
        x, y, zz = self.x, self.y, self.zz
        num = self.q(-1) * self.B(self.z2, -l) * (x * self.z1 - y * self.f.inv(self.z2) * self.q(2 * l - 2))
        return self.div(num, self.B(zz, 1 - 2 * l) * self.B(zz, 2 - 2 * l))

    def _beta_ll(self, l):
        x, y, zz = self.x, self.y, self.zz
        num = x * self.q(-1) * self.A(l, self.z1, self.z2) + y * self.q(-1) * self.A(l, self.z2, self.z1)
        return self.div(num, self.B(zz, -2 * l) * self.B(zz, 2 - 2 * l))

    def _beta_lp(self, l):
        f, x, y, zz = self.f, self.x, self.y, self.zz
        num = self.n(l + 1) * self.B(self.z2, -l) * self.B(self.z1, -l) * self.B(zz, 1 - l)
        tail = (x * f.inv(self.z1) - y * self.z2 * self.q(-2 * l)) * self.q(-1)
        return -self.div(num, self.B(zz, -2 * l) * self.B(zz, 1 - 2 * l)) * tail

    def _beta_00(self, l):
        num = self.x * self.B(self.z1, 0) + self.y * self.B(self.z2, 0)
        return self.div(self.q(-1) * num, self.B(self.zz, 0))

    def _beta_01(self, l):
        f = self.f
        num = self.q(-1) * self.B(self.z1, 0) * self.B(self.z2, 0)
        tail = -self.x * f.inv(self.z1) + self.y * self.z2
        return self.div(num, self.B(self.zz, 0) * self.B(self.z2, -1)) * tail

    def _gamma_lp(self, l):
        f, x, y, zz = self.f, self.x, self.y, self.zz
        num = self.q(1) * self.n(l) * (-f.inv(x) * self.z1 * self.q(-2 * l - 2) + f.inv(y) * f.inv(self.z2))
        return self.div(num, self.B(zz, -2 * l) * self.B(zz, 1 - 2 * l))

    def _gamma_ll(self, l):
        x, y, zz = self.x, self.y, self.zz
        num = x * self.q(1) * self.A(l, self.z1, self.z2) + y * self.q(1) * self.A(l, self.z2, self.z1)
        return self.div(num, self.B(zz, -2 * l) * self.B(zz, 2 - 2 * l))

    def _gamma_lm(self, l):
        f, x, y, zz = self.f, self.x, self.y, self.zz
        num = self.n(l) * self.B(self.z2, 1 - l) * self.B(self.z1, 1 - l) * self.B(zz, 2 - l)
        den = self.n(l - 1) * self.B(zz, 1 - 2 * l) * self.B(zz, 2 - 2 * l)
        tail = (-f.inv(x) * f.inv(self.z1) * self.q(2 * l) + f.inv(y) * self.z2 * self.q(2)) * self.q(1)
        return -self.div(num, den) * tail

    def _gamma_top(self, l):
        f = self.f
        num = f.inv(self.x) * self.B(self.z1, 2) + f.inv(self.y) * self.B(self.z2, 2)
        return self.div(self.q(1) * num, self.B(self.zz, 4))

    def _gamma_topm(self, l):
        f = self.f
        num = self.q(3) * self.B(self.z1, 2) * self.B(self.z2, 2)
        tail = f.inv(self.x) * f.inv(self.z1) * self.q(-4) - f.inv(self.y) * self.z2
        return self.div(num, self.B(self.zz, 3) * self.n(2)) * tail

    # The proportionality scalars alpha_l with f^{p-1} Omega_l = alpha_l Phi_l.

    def alpha0(self):
        p = self.f.p
        v = qfact(p - 1, self.f) * self.zpow(self.z1, -(p - 1)) * (-((-1) ** p))
        return self._safe(lambda: v * self.div(self.B(self.z2, 0), self.B(self.z1, 1)))

    def alpha_ratio_line1(self, l: int):
        return self.e0_phi(l)

    def alpha_ratio_line2(self, l: int):
        def val():
            f, zz = self.f, self.zz
            num = self.n(l) * self.B(self.z2, -l - 1) * self.B(zz, -2 * l) * self.B(zz, 1 - 2 * l)
            den = self.n(l + 1) * self.B(self.z2, -l) * self.B(self.z1, -l) * self.B(zz, 1 - l)
            return -self.z1 * f.inv(self.z2) * self.q(-2) * self.div(num, den)

        return self._safe(val)

    def alpha1_over_alpha0(self):
        def val():
            f, zz, p = self.f, self.zz, self.f.p
            num = self.B(self.z2, -1) * self.B(zz, 0)
            den = self.B(self.z2, 0) * self.B(self.z1, 0)
            return self.z1 * f.inv(self.z2) * self.q(-2) * self.div(num, den) * (-1) ** p

        return self._safe(val)

    def alpha_derived(self, l: int):
        """alpha_l in our pinned normalisation (derived, not printed)."""

        def val():
            f, zz = self.f, self.zz
            out = qfact(f.p - 1, f) * self.zpow(self.z2, -l) * self.q(l * (l - 1))
            for i in range(l):
                out = out * self.B(zz, -2 * l + i + 2)
            for i in range(1, l + 1):
                out = out * self.inv(self.B(self.z1, 1 - i))
            return out

        return self._safe(val)

    # Intertwiner scalars and the Delta_l determinant.

    def c_factor(self, j: int):
        """The j-th factor of the printed c_l product."""

        def val():
            f, x, y = self.f, self.x, self.y
            num = self.B(self.z2, -j) * (x * self.z1 - y * f.inv(self.z2) * self.q(2 * j - 2))
            den = self.B(self.z1, -j) * (-x * f.inv(self.z1) * self.q(2 * j - 2) + y * self.z2)
            return self.div(num, den)

        return self._safe(val)

    def c_l(self, l: int):
        out = self.f.one
        for j in range(l + 1):
            fac = self.c_factor(j)
            if fac is None:
                return None
            out = out * fac
        return out

    def delta_det(self, l: int):
        """|Delta_l| for l >= 1 (printed for |Delta_{L+1}| with L = l - 1)."""
        if l < 1:
            return None
        f, x, y = self.f, self.x, self.y
        L = l - 1

        def val():
            out = self.div(self.B(self.z2, 0), self.B(self.z1, 1)) * self.q(-((L + 1) * (L + 2) // 2))
            for j in range(1, L + 2):
                out = out * qfact(j, f)
            zzinv = f.inv(self.zz)
            for j in range(L + 1):
                out = out * (y - x * zzinv * self.q(2 * j)) ** (L + 1 - j)
            return out

        return self._safe(val)

    def delta_zero_factors(self, l: int) -> list[int]:
        """Indices j in 0..l-1 whose factor y - x (z1 z2)^{-1} q^{2j} vanishes."""
        f = self.f
        zzinv = f.inv(self.zz)
        return [j for j in range(l) if f.eq(self.y, self.x * zzinv * self.q(2 * j))]
