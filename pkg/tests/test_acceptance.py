"""Acceptance criteria, one printed PASS/FAIL line each.

Each criterion is a function of the backend so the float cross-run reuses the
same checks.  Lines are collected in ``LINES`` and printed in the terminal
summary (and immediately with ``pytest -s``).  Running this file as a script
prints them too.
"""

from __future__ import annotations

import sys
from functools import lru_cache

from uqlab.basisnew import basis_check, delta_family
from uqlab.cli import factorial_form_report
from uqlab.conditions import conditions_of
from uqlab.identity import alpha_cross_backend, verify_identity
from uqlab.laurent import LaurentPoly
from uqlab.rmat import check_rmatrix
from uqlab.scalar import FieldSpec
from uqlab.structure import decompose, irreducibility
from uqlab.sweep import sweep_points
from uqlab.tensorrep import build_tensor, check_affine_relations
from uqlab.weightvec import closed_form_report, lowest_vectors

LINES: list[str] = []
SWEEP_N = 20
IDENTITY_GRID = [(l, z1, z2) for l in range(1, 5) for z1 in range(4, 9) for z2 in range(4, 9)]


def record(n: int, title: str, ok: bool, detail: str) -> bool:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    LINES.append(line)
    print(line)
    return ok


def default_tensor(backend: str, p: int):
    f = FieldSpec(backend, p)
    return build_tensor(f, f.const(2), f.const(1), f.const(3), f.const(5))


@lru_cache(maxsize=None)
def sweep(backend: str, p: int):
    f = FieldSpec(backend, p)
    pts = sweep_points(f, SWEEP_N, seed=0)
    return [(pt, build_tensor(f, pt.z1, pt.x, pt.z2, pt.y)) for pt in pts]


def _rays_covered(p: int, pts) -> bool:
    labels = {pt.label.split(":", 1)[1] for pt, _ in pts if pt.label.startswith("base:")}
    return all(f"cond{c}:l={l}" in labels for c in (2, 3) for l in range(1, p))


def presentation(backend: str, ps) -> tuple[bool, str]:
    bad = [p for p in ps if not check_affine_relations(default_tensor(backend, p)).passed]
    return not bad, f"{backend} p={list(ps)}, failing {bad}"


def decomposition(backend: str, ps) -> tuple[bool, str]:
    bad = []
    for p in ps:
        w = decompose(default_tensor(backend, p)).report
        ok = (
            w.passed
            and w.witness["block_ranks"] == [p] * p
            and w.witness["joint_rank"] == p * p
            and all(w.witness["f_power_p_zero"])
            and all(w.witness["f_power_p_minus_1_nonzero"])
        )
        if not ok:
            bad.append(p)
    return not bad, f"{backend} p={list(ps)}, failing {bad}"


def closed_forms(backend: str, ps) -> tuple[bool, str]:
    bad, pins = [], {}
    for p in ps:
        t = default_tensor(backend, p)
        rep = closed_form_report(t)
        pins[p] = rep.witness["phi_pinned_entry_mismatch"]
        # Every reported mismatch must be the separately printed entry, off by [l].
        factor_ok = all(
            w.closed_form.get("pin_factor_is_qint_l", True)
            for w in lowest_vectors(t)
            if w.closed_form["status"] == "mismatch-at-pinned-entry"
        )
        if not rep.passed or not factor_ok:
            bad.append(p)
    return not bad, f"{backend}, pinned-entry mismatches reported at l={pins}, failing {bad}"


def irreducibility_sweep(backend: str, ps) -> tuple[bool, str]:
    bad, counts = [], {}
    for p in ps:
        pts = sweep(backend, p)
        counts[p] = len(pts)
        if len(pts) < SWEEP_N or not _rays_covered(p, pts):
            bad.append((p, "coverage"))
        for pt, t in pts:
            c = conditions_of(t)
            rep = irreducibility(t)
            if rep.witness.get("verdict") != ("irreducible" if c.cond2.ok and c.cond3.ok else "reducible"):
                bad.append((p, pt.label))
    return not bad, f"{backend} points={counts}, disagreements {bad}"


def rmatrix(backend: str, ps) -> tuple[bool, str]:
    bad, generic, violated = [], 0, 0
    for p in ps:
        for pt, t in [(None, default_tensor(backend, p))] + sweep(backend, p):
            c = conditions_of(t)
            rep = check_rmatrix(t)
            label = pt.label if pt else "default"
            if c.generic:
                generic += 1
                if not rep.passed or not all(rep.witness["commutes"].values()):
                    bad.append((p, label))
            elif not (c.cond2.ok and c.cond3.ok):
                violated += 1
                if not rep.passed or rep.witness["invertible_member"]:
                    bad.append((p, label))
    return not bad, f"{backend} generic={generic} violated={violated}, failing {bad}"


def identity_engine() -> tuple[bool, str]:
    bad = []
    for l, z1, z2 in IDENTITY_GRID:
        d = verify_identity(l, z1, z2).witness["derived"]
        if not (d["identity_exact"] and d["oracle_matches_recurrence_route"] and d["oracle_equals_expansion"]):
            bad.append((l, z1, z2))
    c2 = factorial_form_report(8).witness
    ce = c2["generic_q_counterexample"]
    ce_ok = (
        not ce["equal"]
        and ce["lhs"] == LaurentPoly({0: 2})
        and ce["rhs"] == LaurentPoly({1: 1, -1: 1})
    )
    ok = not bad and not c2["classical_failures"] and ce_ok
    return ok, (
        f"grid={len(IDENTITY_GRID)} failing {bad}; q=1 cases={c2['cases']} failing {c2['classical_failures']}; "
        f"generic-q counterexample reproduced={ce_ok}"
    )


def identity_cross_backend(p: int) -> tuple[bool, str]:
    """Float alpha_l at the given root against the exact oracle route, on the grid points l < p."""
    bad, checked, nonzero, degenerate = [], 0, 0, 0
    for l, z1, z2 in IDENTITY_GRID:
        if l >= p:
            continue
        out = alpha_cross_backend(l, z1, z2, p)
        ex, fl = out["exact"], out["float"]
        if ex["status"] == "degenerate":
            degenerate += 1
            if fl["status"] != "degenerate":
                bad.append((l, z1, z2))
            continue
        checked += 1
        if ex["status"] != "match" or fl["status"] != "match":
            bad.append((l, z1, z2))
        elif fl["nonzero"]:
            nonzero += 1
    ok = not bad and nonzero > 0
    return ok, f"p={p} checked={checked} nonzero={nonzero} degenerate={degenerate}, failing {bad}"


def basis_verdicts(backend: str, ps) -> tuple[bool, str]:
    bad, loci = [], 0
    for p in ps:
        for pt, t in sweep(backend, p):
            for kind in ("delta", "dual"):
                rep = basis_check(t, kind)
                if not rep.passed or rep.witness["basis"] != rep.witness["expected"]:
                    bad.append((p, kind, pt.label))
            for l in range(p):
                loci += 1
                if not delta_family(t, l).comparison["zero_locus_agrees"]:
                    bad.append((p, "locus", l, pt.label))
    return not bad, f"{backend} p={list(ps)} determinant loci compared={loci}, failing {bad}"


# Exact criteria.


def test_presentation_relations_exact_and_float():
    ok1, d1 = presentation("exact", (3, 5, 7))
    ok2, d2 = presentation("float", (9,))
    assert record(1, "affine presentation relations", ok1 and ok2, f"{d1}; {d2}")


def test_block_decomposition():
    ok, d = decomposition("exact", (3, 5))
    assert record(2, "block decomposition", ok, d)


def test_printed_weight_vector_forms():
    ok, d = closed_forms("exact", (3, 5))
    assert record(3, "highest/lowest vector closed forms", ok, d)


def test_irreducibility_matches_conditions():
    ok, d = irreducibility_sweep("exact", (3, 5))
    assert record(4, "irreducible iff cond2 and cond3", ok, d)


def test_rcheck_commutes_and_degenerates():
    ok, d = rmatrix("exact", (3, 5))
    assert record(5, "R-check intertwiner", ok, d)


def test_identity_engine_and_factorial_form():
    ok, d = identity_engine()
    assert record(6, "coproduct identity engine", ok, d)


def test_basis_verdicts_and_determinant_locus():
    ok, d = basis_verdicts("exact", (3, 5))
    assert record(7, "new-basis verdicts", ok, d)


def test_float_backend_agrees_at_p3():
    parts = [
        presentation("float", (3,)),
        decomposition("float", (3,)),
        closed_forms("float", (3,)),
        irreducibility_sweep("float", (3,)),
        rmatrix("float", (3,)),
        identity_cross_backend(3),
        basis_verdicts("float", (3,)),
    ]
    failed = [i + 1 for i, (ok, _) in enumerate(parts) if not ok]
    detail = f"float p=3 tol=1e-9, failing criteria {failed}; " + "; ".join(d for _, d in parts)
    assert record(8, "cross-backend consistency", not failed, detail)


if __name__ == "__main__":
    fns = sorted((v for k, v in globals().items() if k.startswith("test_")), key=lambda f: f.__code__.co_firstlineno)
    failures = 0
    for fn in fns:
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
