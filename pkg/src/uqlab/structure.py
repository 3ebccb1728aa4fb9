"""Block decomposition, affine action coefficients, submodule closure, irreducibility."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

from .conditions import ConditionReport, check_conditions, conditions_of
from .errors import ConditionError, DegenerateError
from .linalg import is_zero_vector, make_span, matrix_scale, max_abs, proportional, rank
from .printed import Forms
from .report import CheckReport, ERROR, FAIL
from .scalar import qbracket, qfact, qint
from .tensorrep import TensorModule
from .weightvec import (
    apply_power,
    expand_e0_omega,
    expand_f0_phi,
    highest_vectors,
    lowest_vectors,
)

__all__ = [
    "ConditionReport",
    "check_conditions",
    "decompose",
    "affine_action_coeffs",
    "submodule_closure",
    "irreducibility",
    "CLOSURE_ORDER",
]

CLOSURE_ORDER = ("e1", "f1", "e0", "f0", "K1", "K0")


@dataclass
class Decomposition:
    blocks: list
    report: CheckReport


def decompose(t: TensorModule, omegas=None) -> Decomposition:
    """Blocks {f^i Omega_l}, each carrying the normal-basis action of weight z1 z2 q^{-2l}."""
    f, p = t.field, t.p
    rep = CheckReport("decompose", t.params())
    try:
        omegas = omegas or highest_vectors(t)
    except (ConditionError, DegenerateError) as exc:
        rep.status = ERROR
        rep.witness["error"] = str(exc)
        return Decomposition([], rep)
    blocks, block_ranks, nil, top_nonzero, action_ok = [], [], [], [], []
    for l, w in enumerate(omegas):
        vecs = [w.coeffs]
        for _ in range(p - 1):
            vecs.append(t.apply("f1", vecs[-1]))
        blocks.append(vecs)
        block_ranks.append(rank(f, vecs, t.dim))
        scale = max_abs(f, vecs[-1])
        top_nonzero.append(bool(scale) if f.exact else scale > f.tol * max(1.0, max_abs(f, w.coeffs)))
        nil.append(is_zero_vector(f, t.apply("f1", vecs[-1]), scale))
        action_ok.append(_block_action_ok(t, vecs, t.z1 * t.z2 * f.qpow(-2 * l)))
    total = rank(f, [v for b in blocks for v in b], t.dim)
    rep.witness.update(
        block_ranks=block_ranks,
        joint_rank=total,
        f_power_p_zero=nil,
        f_power_p_minus_1_nonzero=top_nonzero,
        normal_action=action_ok,
    )
    if not (all(r == p for r in block_ranks) and total == p * p and all(nil) and all(top_nonzero) and all(action_ok)):
        rep.status = FAIL
    return Decomposition(blocks, rep)


def _block_action_ok(t: TensorModule, vecs, mu) -> bool:
    """u_i = f^i Omega / [i]! must satisfy K u_i = mu q^{-2i} u_i, f u_i = [i+1] u_{i+1}, e u_i = [mu+1-i] u_{i-1}."""
    f, p = t.field, t.p
    us = [[c * f.inv(qfact(i, f)) for c in v] for i, v in enumerate(vecs)]
    zero = [f.zero] * t.dim
    for i, u in enumerate(us):
        scale = max_abs(f, u)
        checks = [
            (t.apply("K1", u), [c * mu * f.qpow(-2 * i) for c in u]),
            (t.apply("f1", u), [c * qint(i + 1, f) for c in (us[i + 1] if i + 1 < p else zero)]),
            (t.apply("e1", u), [c * qbracket(mu, 1 - i, f) for c in (us[i - 1] if i > 0 else zero)]),
        ]
        for got, want in checks:
            if not is_zero_vector(f, [a - b for a, b in zip(got, want)], max(scale, max_abs(f, got))):
                return False
    return True


# Coefficients of e0 on Omega and f0 on Phi.


@dataclass
class ActionCoeffs:
    beta: dict = dc_field(default_factory=dict)
    gamma: dict = dc_field(default_factory=dict)
    A: list = dc_field(default_factory=list)
    single_term: dict = dc_field(default_factory=dict)
    symmetry: dict = dc_field(default_factory=dict)
    report: CheckReport | None = None


def _entry(f, direct, conv, printed) -> dict:
    """direct: our value; conv: factor to the printed normalisation or None; printed: formula or None."""
    out = {"direct": direct, "printed": printed}
    if printed is None:
        out["status"] = "printed-formula-undefined"
    elif conv is None:
        out["status"] = "normalization-undefined"
    else:
        val = direct * conv
        out["printed_normalisation"] = val
        if f.eq(val, printed):
            out["status"] = "match"
        else:
            out["status"] = "mismatch"
            if not f.is_zero(printed):
                out["ratio"] = val * f.inv(printed)
    return out


def _ratio(f, a, b):
    if a is None or b is None or f.is_zero(b):
        return None
    return a * f.inv(b)


def affine_action_coeffs(t: TensorModule, omegas=None, phis=None) -> ActionCoeffs:
    f, p = t.field, t.p
    rep = CheckReport("coeffs", t.params())
    out = ActionCoeffs(report=rep)
    try:
        omegas = omegas or highest_vectors(t)
        phis = phis or lowest_vectors(t)
        exp_e0 = [expand_e0_omega(t, omegas, l) for l in range(p)]
        exp_f0 = [expand_f0_phi(t, phis, l) for l in range(p)]
    except (ConditionError, DegenerateError) as exc:
        rep.status = ERROR
        rep.witness["error"] = str(exc)
        return out
    forms = Forms(f, t.z1, t.z2, t.x, t.y)
    N = [forms.omega_scale(l) for l in range(p)]
    D = [forms.phi_scale(l) for l in range(p)]

    for l in range(p):
        ex = exp_e0[l]
        if "lm" in ex:
            out.beta[(l, l - 1)] = _entry(f, ex["lm"], _ratio(f, N[l], N[l - 1]), forms.beta(l, "lm"))
        out.beta[(l, l)] = _entry(f, ex["ll"], f.one, forms.beta(l, "ll"))
        if "lp" in ex:
            out.beta[(l, l + 1)] = _entry(f, ex["lp"], _ratio(f, N[l], N[l + 1]), forms.beta(l, "lp"))
        gx = exp_f0[l]
        if "lp" in gx:
            out.gamma[(l, l + 1)] = _entry(f, gx["lp"], _ratio(f, D[l], D[l + 1]), forms.gamma(l, "lp"))
        out.gamma[(l, l)] = _entry(f, gx["ll"], f.one, forms.gamma(l, "ll"))
        if "lm" in gx:
            out.gamma[(l, l - 1)] = _entry(f, gx["lm"], _ratio(f, D[l], D[l - 1]), forms.gamma(l, "lm"))
    # Separately printed boundary cases.
    out.beta["0,0-special"] = _entry(f, exp_e0[0]["ll"], f.one, forms.beta(0, "00"))
    if p > 1:
        out.beta["0,1-special"] = _entry(f, exp_e0[0]["lp"], _ratio(f, N[0], N[1]), forms.beta(0, "01"))
    top = p - 1
    out.gamma["p-1,p-1-special"] = _entry(f, exp_f0[top]["ll"], f.one, forms.gamma(top, "top"))
    out.gamma["p-1,p-2-special"] = _entry(f, exp_f0[top]["lm"], _ratio(f, D[top], D[top - 1]), forms.gamma(top, "topm"))

    out.A = [forms.A_l(l) for l in range(p)]
    out.single_term = _single_term_checks(t, forms, omegas, phis, N, D)
    out.symmetry = _symmetry_checks(t, exp_e0, exp_f0)

    structural = all(e["ok"] for e in out.single_term.values()) and all(out.symmetry["beta_ll"]) and all(
        out.symmetry["gamma_ll"]
    )
    rep.witness.update(
        beta={str(k): v["status"] for k, v in out.beta.items()},
        gamma={str(k): v["status"] for k, v in out.gamma.items()},
        single_term={k: v["status"] for k, v in out.single_term.items()},
        symmetry=out.symmetry,
    )
    if not structural:
        rep.status = FAIL
    return out


def _single_term_checks(t, forms: Forms, omegas, phis, N, D) -> dict:
    """f0 Omega_l ~ Omega_{l-1}, e0 Phi_l ~ Phi_{l+1}, e^2 e0 Omega_l ~ Omega_{l-1}, f^2 f0 Phi_l ~ Phi_{l+1}."""
    f, p = t.field, t.p
    out = {}
    cases = []
    for l in range(p):
        cases.append(("f0_omega", l, t.apply("f0", omegas[l].coeffs), omegas[l - 1].coeffs if l else None,
                      _ratio(f, N[l], N[l - 1]) if l else None, forms.f0_omega(l)))
        ee = apply_power(t, "e1", t.apply("e0", omegas[l].coeffs), 2)
        cases.append(("ee_e0_omega", l, ee, omegas[l - 1].coeffs if l else None,
                      _ratio(f, N[l], N[l - 1]) if l else None, forms.ee_e0_omega(l)))
        nxt = phis[l + 1].coeffs if l + 1 < p else None
        conv = _ratio(f, D[l], D[l + 1]) if l + 1 < p else None
        cases.append(("e0_phi", l, t.apply("e0", phis[l].coeffs), nxt, conv, forms.e0_phi(l)))
        ff = apply_power(t, "f1", t.apply("f0", phis[l].coeffs), 2)
        cases.append(("ff_f0_phi", l, ff, nxt, conv, forms.ff_f0_phi(l)))
    for name, l, vec, target, conv, printed in cases:
        key = f"{name}[{l}]"
        if target is None:
            ok = is_zero_vector(f, vec, max(1.0, max_abs(f, vec)))
            out[key] = {"ok": ok, "status": "zero" if ok else "nonzero"}
            continue
        s = proportional(f, vec, target)
        if s is None:
            out[key] = {"ok": False, "status": "not-proportional"}
            continue
        entry = _entry(f, s, conv, printed)
        entry["ok"] = True
        out[key] = entry
    return out


def _symmetry_checks(t: TensorModule, exp_e0, exp_f0) -> dict:
    """beta_{l,l} and gamma_{l,l} are unchanged by swapping the two factors."""
    f, p = t.field, t.p
    s = t.swapped
    om2 = highest_vectors(s)
    ph2 = lowest_vectors(s)
    bl, gl = [], []
    for l in range(p):
        bl.append(f.eq(exp_e0[l]["ll"], expand_e0_omega(s, om2, l)["ll"]))
        gl.append(f.eq(exp_f0[l]["ll"], expand_f0_phi(s, ph2, l)["ll"]))
    return {"beta_ll": bl, "gamma_ll": gl}


# Closure and irreducibility.


@dataclass
class Subspace:
    dim: int
    basis: list


def submodule_closure(t: TensorModule, seed) -> Subspace:
    """Smallest generator-stable subspace containing seed (breadth first, fixed generator order)."""
    f = t.field
    seed = list(seed.coeffs if hasattr(seed, "coeffs") else seed)
    span = make_span(f, t.dim)
    if not span.add(seed):
        raise ValueError("closure seed must be nonzero")
    queue = deque([seed])
    op_norm = {g: matrix_scale(f, t.gens[g]) * t.p for g in CLOSURE_ORDER}
    while queue and span.dim < t.dim:
        v = queue.popleft()
        vnorm = _norm(f, v)
        for g in CLOSURE_ORDER:
            w = t.apply(g, v)
            if span.add(w, op_norm[g] * vnorm):
                queue.append(w)
    return Subspace(span.dim, span.basis())


def _norm(f, v) -> float:
    return sum(f.magnitude(c) ** 2 for c in v) ** 0.5


def is_invariant(t: TensorModule, sub: Subspace) -> bool:
    """True when applying any generator to the basis adds nothing."""
    span = make_span(t.field, t.dim)
    for b in sub.basis:
        span.add(b)
    return all(span.contains(t.apply(g, b)) for b in sub.basis for g in CLOSURE_ORDER)


def irreducibility(t: TensorModule, omegas=None) -> CheckReport:
    """Verdict from closures of every Omega_l; the check passes when it agrees with cond2 and cond3."""
    rep = CheckReport("irreducible", t.params())
    cond = conditions_of(t)
    rep.witness["conditions"] = cond.to_dict()
    if not cond.cond1.ok:
        rep.status = ERROR
        rep.witness["error"] = "Condition 1 fails"
        return rep
    try:
        omegas = omegas or highest_vectors(t)
    except DegenerateError as exc:
        rep.status = ERROR
        rep.witness["error"] = str(exc)
        return rep
    dims = [submodule_closure(t, w).dim for w in omegas]
    irreducible = all(d == t.dim for d in dims)
    expected = cond.irreducible_expected
    rep.witness.update(
        verdict="irreducible" if irreducible else "reducible",
        closure_dims=dims,
        expected="irreducible" if expected else "reducible",
    )
    if irreducible != expected:
        rep.fail(falsification=True)
    return rep
