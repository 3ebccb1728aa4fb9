"""The intertwiner R-check between V_{z1}(x) (x) V_{z2}(y) and the swapped product.

``build_rcheck`` assembles Rc = sum_l c_l I P_l from the block decomposition
of both sides, with the c_l ratios forced by Rc e0 = e0 Rc.  ``intertwiner_space``
solves the full commutant system independently, so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .conditions import conditions_of
from .errors import ConditionError, DegenerateError
from .linalg import inverse, matrix_is_zero, matrix_scale, max_abs, nullspace, proportional, rank
from .matrix import SparseMatrix
from .printed import Forms
from .report import CheckReport, ERROR
from .tensorrep import GENERATORS, TensorModule
from .weightvec import expand_e0_omega, highest_vectors


@dataclass
class Intertwiner:
    matrix: SparseMatrix
    c: list
    source: TensorModule
    target: TensorModule
    metadata: dict = dc_field(default_factory=dict)


def _block_basis(t: TensorModule, omegas) -> list[list]:
    """Columns f^i Omega_l ordered by (l, i)."""
    cols = []
    for w in omegas:
        v = w.coeffs
        for _ in range(t.p):
            cols.append(v)
            v = t.apply("f1", v)
    return cols


def projectors(t: TensorModule, omegas=None) -> list[SparseMatrix]:
    """P_l: projection onto span{f^i Omega_l} along the other blocks."""
    f, p = t.field, t.p
    omegas = omegas or highest_vectors(t)
    cols = _block_basis(t, omegas)
    B = [[cols[c][r] for c in range(t.dim)] for r in range(t.dim)]
    Binv = SparseMatrix.from_dense(inverse(f, B))
    Bm = SparseMatrix.from_dense(B)
    out = []
    for l in range(p):
        sel = SparseMatrix.diagonal([f.one if c // p == l else f.zero for c in range(t.dim)])
        out.append(Bm @ sel @ Binv)
    return out


def _commutant_residuals(Rc: SparseMatrix, t: TensorModule, s: TensorModule):
    for g in GENERATORS:
        yield g, Rc @ t.gens[g] - s.gens[g] @ Rc


def _is_swap(t: TensorModule, s: TensorModule) -> bool:
    f = t.field
    return all(f.eq(a, b) for a, b in ((t.z1, s.z2), (t.z2, s.z1), (t.x, s.y), (t.y, s.x)))


def build_rcheck(t: TensorModule, s: TensorModule | None = None) -> Intertwiner:
    """Rc with c_0 = 1 and c_{l+1}/c_l = beta'_{l,l+1} / beta_{l,l+1}."""
    f, p = t.field, t.p
    s = s if s is not None else t.swapped
    if not _is_swap(t, s):
        raise ConditionError("target module is not the swapped tensor product")
    cond = conditions_of(t)
    if not cond.generic:
        failing = [k for k, c in cond.to_dict().items() if not c["ok"]]
        raise ConditionError(f"intertwiner is not well defined: {', '.join(failing)} fail")
    om, om_s = highest_vectors(t), highest_vectors(s)

    # Matching the Omega_{l+1} coefficient of Rc e0 Omega_l and e0 Rc Omega_l.
    c = [f.one]
    enforced = []
    for l in range(p - 1):
        b = expand_e0_omega(t, om, l)["lp"]
        b_s = expand_e0_omega(s, om_s, l)["lp"]
        if f.is_zero(b):
            raise DegenerateError(f"beta_{{{l},{l + 1}}} vanishes; c_{l + 1} cannot be enforced")
        r = b_s * f.inv(b)
        enforced.append(r)
        c.append(c[-1] * r)

    cols, cols_s = _block_basis(t, om), _block_basis(s, om_s)
    B = [[cols[k][r] for k in range(t.dim)] for r in range(t.dim)]
    Bs = SparseMatrix.from_dense([[cols_s[k][r] * c[k // p] for k in range(t.dim)] for r in range(t.dim)])
    Rc = Bs @ SparseMatrix.from_dense(inverse(f, B))
    meta = {"c0": f.one, "enforced_ratios": enforced, "printed_ratios": _printed_ratio_comparison(t, s, enforced)}
    return Intertwiner(Rc, c, t, s, meta)


def _printed_ratio_comparison(t: TensorModule, s: TensorModule, enforced) -> list[dict]:
    """Compare c_{l+1}/c_l with the (l+1)-th printed factor.

    The printed ratio refers to printed Omega normalisations on both sides, so
    it is compared both raw and after converting to our pinned vectors.
    """
    f = t.field
    forms, forms_s = Forms(f, t.z1, t.z2, t.x, t.y), Forms(f, s.z1, s.z2, s.x, s.y)
    out = []
    for l, r in enumerate(enforced):
        printed = forms.c_factor(l + 1)
        entry = {"l": l, "enforced": r, "printed": printed}
        if printed is None:
            entry["status"] = "printed-formula-undefined"
            out.append(entry)
            continue
        # Our I sends Omega_l to Omega'_l; the printed one scales by N'_l / N_l.
        n0, n1 = forms.omega_scale(l), forms.omega_scale(l + 1)
        m0, m1 = forms_s.omega_scale(l), forms_s.omega_scale(l + 1)
        converted = None
        if None not in (n0, n1, m0, m1) and not f.is_zero(m1 * n0):
            converted = r * m0 * n1 * f.inv(m1 * n0)
        entry["raw_match"] = f.eq(r, printed)
        entry["converted"] = converted
        entry["converted_match"] = converted is not None and f.eq(converted, printed)
        entry["status"] = "match" if entry["raw_match"] or entry["converted_match"] else "mismatch"
        if entry["status"] == "mismatch" and not f.is_zero(printed):
            entry["ratio"] = (converted if converted is not None else r) * f.inv(printed)
        out.append(entry)
    return out


def commutes(rc: Intertwiner) -> dict:
    """Per generator: (zero?, largest residual entry)."""
    f = rc.source.field
    scale = max(1.0, matrix_scale(f, rc.matrix)) * max(1.0, matrix_scale(f, *rc.source.gens.values()))
    return {g: matrix_is_zero(f, M, scale) for g, M in _commutant_residuals(rc.matrix, rc.source, rc.target)}


@dataclass
class IntertwinerSpace:
    dimension: int
    basis: list
    invertible: bool
    witness: dict = dc_field(default_factory=dict)


def _support(t: TensorModule, s: TensorModule) -> list[tuple[int, int]]:
    """Entries (a, b) allowed by M K = K' M for both Cartan generators."""
    f = t.field
    allowed = []
    for a in range(t.dim):
        for b in range(t.dim):
            if all(f.eq(t.gens[k][b, b], s.gens[k][a, a]) for k in ("K0", "K1")):
                allowed.append((a, b))
    return allowed


def _commutant_rows(t: TensorModule, s: TensorModule, idx: dict):
    """Rows of (M g - g' M)_{ab} = 0 for the four non-Cartan generators."""
    n = t.dim
    for g in ("e1", "f1", "e0", "f0"):
        GT = t.gens[g].transpose()
        Gs = s.gens[g]
        for a in range(n):
            for b in range(n):
                row = {}
                for c, v in GT.rows.get(b, {}).items():
                    k = idx.get((a, c))
                    if k is not None:
                        row[k] = row.get(k, 0) + v
                for c, v in Gs.rows.get(a, {}).items():
                    k = idx.get((c, b))
                    if k is not None:
                        row[k] = row.get(k, 0) - v
                row = {k: v for k, v in row.items() if v}
                if row:
                    yield row


def _to_matrix(t: TensorModule, allowed, vec) -> SparseMatrix:
    return SparseMatrix.from_entries(t.dim, t.dim, ((a, b, v) for (a, b), v in zip(allowed, vec) if v))


def intertwiner_space(t: TensorModule, s: TensorModule | None = None) -> IntertwinerSpace:
    """All M with M g = g' M for the six generators, solved as one linear system."""
    f = t.field
    s = s if s is not None else t.swapped
    allowed = _support(t, s)
    idx = {ab: k for k, ab in enumerate(allowed)}
    rows = list(_commutant_rows(t, s, idx))
    system = SparseMatrix(len(rows), len(allowed), dict(enumerate(rows)))
    null = nullspace(f, system) if allowed else []
    basis = [_to_matrix(t, allowed, v) for v in null]
    invertible, tried = _has_invertible(t, basis)
    return IntertwinerSpace(
        len(basis),
        basis,
        invertible,
        {"unknowns": len(allowed), "equations": len(rows), "combinations_tried": tried},
    )


def _full_rank(t: TensorModule, M: SparseMatrix) -> bool:
    cols = [[M[r, c] for r in range(t.dim)] for c in range(t.dim)]
    return rank(t.field, cols, t.dim) == t.dim


def _has_invertible(t: TensorModule, basis) -> tuple[bool, int]:
    """Search sum_k (k+1)^m B_k for m = 0..dim; a nonzero determinant polynomial cannot vanish at all of them."""
    f = t.field
    if not basis:
        return False, 0
    tried = 0
    for m in range(len(basis) + 1):
        M = basis[0] * f.const(1)
        for k, Bk in enumerate(basis[1:], start=1):
            M = M + Bk * f.const((k + 1) ** m)
        tried += 1
        if _full_rank(t, M):
            return True, tried
        if len(basis) == 1:
            break
    return False, tried


def check_rmatrix(t: TensorModule) -> CheckReport:
    """Rc construction plus an independent solve of the commutant."""
    f = t.field
    rep = CheckReport("rmatrix", t.params())
    cond = conditions_of(t)
    rep.witness["conditions"] = {k: v["ok"] for k, v in cond.to_dict().items()}
    try:
        space = intertwiner_space(t)
    except DegenerateError as exc:
        rep.status = ERROR
        rep.witness["error"] = str(exc)
        return rep
    rep.witness.update(space_dimension=space.dimension, invertible_member=space.invertible)
    expected = cond.cond2.ok and cond.cond3.ok
    if not cond.generic:
        rep.witness["rcheck"] = "not built: conditions fail"
        if space.invertible != expected:
            rep.fail(falsification=True)
        return rep
    try:
        rc = build_rcheck(t)
    except (ConditionError, DegenerateError) as exc:
        rep.status = ERROR
        rep.witness["error"] = str(exc)
        return rep
    comm = commutes(rc)
    om_s = highest_vectors(rc.target)
    om = highest_vectors(t)
    image = rc.matrix.apply(om[0].coeffs, f.zero)
    top_ok = proportional(f, image, om_s[0].coeffs)
    in_space = _in_span(t, space.basis, rc.matrix)
    rep.witness.update(
        c=rc.c,
        commutes={g: ok for g, (ok, _) in comm.items()},
        commutant_max_abs={g: big for g, (_, big) in comm.items()},
        omega0_image_ratio=top_ok,
        rcheck_invertible=_full_rank(t, rc.matrix),
        rcheck_in_space=in_space,
        printed_c_ratios=[
            {k: v for k, v in e.items() if k in ("l", "status", "raw_match", "converted_match", "ratio")}
            for e in rc.metadata["printed_ratios"]
        ],
    )
    ok = (
        all(o for o, _ in comm.values())
        and top_ok is not None
        and f.eq(top_ok, f.one)
        and rep.witness["rcheck_invertible"]
        and in_space
        and space.invertible
    )
    if not ok:
        rep.fail()
    return rep


def _in_span(t: TensorModule, basis, M: SparseMatrix) -> bool:
    f = t.field
    flat = lambda A: [A[r, c] for r in range(t.dim) for c in range(t.dim)]
    vecs = [flat(B) for B in basis]
    target = flat(M)
    return rank(f, vecs + [target], t.dim**2) == rank(f, vecs, t.dim**2) if vecs else False
