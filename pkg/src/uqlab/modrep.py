"""The p-dimensional U_q(sl2) module in its normal basis and its evaluation images."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .linalg import matrix_is_zero, matrix_scale
from .matrix import SparseMatrix
from .report import CheckReport
from .scalar import MAX_P, FieldSpec, qbracket, qint


@dataclass(frozen=True)
class SL2Module:
    field: FieldSpec
    z: object
    E: SparseMatrix
    F: SparseMatrix
    K: SparseMatrix
    Kinv: SparseMatrix

    @property
    def dim(self) -> int:
        return self.field.p

    def replace(self, **mats) -> SL2Module:
        """Copy with some matrices swapped out (used for tamper tests)."""
        d = {n: getattr(self, n) for n in ("E", "F", "K", "Kinv")}
        d.update(mats)
        return SL2Module(self.field, self.z, **d)


def build_module(field: FieldSpec, z) -> SL2Module:
    """K v_i = z q^{-2i} v_i, F v_i = [i+1] v_{i+1}, E v_i = [lambda+1-i] v_{i-1}."""
    p = field.p
    if p > MAX_P:
        raise ParameterError(f"p={p} exceeds the supported maximum {MAX_P}")
    z = field.const(z)
    if field.is_zero(z):
        raise ParameterError("weight parameter z must be nonzero")
    zinv = field.inv(z)
    K = SparseMatrix.diagonal(z * field.qpow(-2 * i) for i in range(p))
    Kinv = SparseMatrix.diagonal(zinv * field.qpow(2 * i) for i in range(p))
    # Column i is the image of v_i.
    F = SparseMatrix(p, p, {i + 1: {i: qint(i + 1, field)} for i in range(p - 1)})
    E = SparseMatrix(p, p, {i - 1: {i: qbracket(z, 1 - i, field)} for i in range(1, p)})
    return SL2Module(field, z, E, F, K, Kinv)


def _relation_residuals(m: SL2Module):
    f = m.field
    I = SparseMatrix.identity(m.dim, f.one)
    q2, qm2 = f.qpow(2), f.qpow(-2)
    denom = f.inv(f.q - f.qpow(-1))
    return [
        ("K*Kinv=1", m.K @ m.Kinv - I),
        ("K*E*Kinv=q^2*E", m.K @ m.E @ m.Kinv - m.E * q2),
        ("K*F*Kinv=q^-2*F", m.K @ m.F @ m.Kinv - m.F * qm2),
        ("[E,F]=(K-Kinv)/(q-q^-1)", m.E @ m.F - m.F @ m.E - (m.K - m.Kinv) * denom),
    ]


def check_sl2_relations(m: SL2Module) -> CheckReport:
    f = m.field
    rep = CheckReport("sl2-relations", {**f.describe(), "z": f.format(m.z)})
    scale = matrix_scale(f, m.E, m.F, m.K, m.Kinv)
    scale = max(scale, scale * scale)
    for name, resid in _relation_residuals(m):
        ok, biggest = matrix_is_zero(f, resid, scale)
        if not ok:
            i, j, v = max(resid.entries(), key=lambda e: f.magnitude(e[2]))
            return rep.fail(relation=name, entry=[i, j], value=f.format(v), max_abs=biggest)
    return rep


@dataclass(frozen=True)
class AffineImages:
    x: object
    e0: SparseMatrix
    e1: SparseMatrix
    f0: SparseMatrix
    f1: SparseMatrix
    K0: SparseMatrix
    K1: SparseMatrix
    K0inv: SparseMatrix
    K1inv: SparseMatrix


def evaluate_affine(m: SL2Module, x) -> AffineImages:
    """Pull back along ev_x: e0 -> q^{-1} x F, f0 -> q x^{-1} E, K0 -> K^{-1}."""
    f = m.field
    x = f.const(x)
    if f.is_zero(x):
        raise ParameterError("evaluation parameter x must be nonzero")
    return AffineImages(
        x=x,
        e0=m.F * (f.qpow(-1) * x),
        e1=m.E,
        f0=m.E * (f.q * f.inv(x)),
        f1=m.F,
        K0=m.Kinv,
        K1=m.K,
        K0inv=m.K,
        K1inv=m.Kinv,
    )


def irreducibility_precondition(m: SL2Module) -> CheckReport:
    """[lambda+1-i] != 0 for i = 1..p-1."""
    f = m.field
    rep = CheckReport("sl2-irreducible", {**f.describe(), "z": f.format(m.z)})
    scale = f.magnitude(m.z) + 1 / f.magnitude(m.z)
    for i in range(1, f.p):
        b = qbracket(m.z, 1 - i, f)
        if f.is_zero(b, scale):
            return rep.fail(i=i, bracket=f.format(b))
    return rep
