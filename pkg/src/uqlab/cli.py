"""Command-line driver: run checks, print one line per result, optionally write JSON.

Exit codes: 0 all checks pass, 1 some check failed or errored, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from . import __version__
from .basisnew import basis_check
from .errors import ParameterError, UqlabError
from .identity import factorial_form_classical, factorial_form_sides, verify_identity
from .modrep import MAX_P
from .report import ERROR, CheckReport, dumps_reports
from .rmat import check_rmatrix
from .scalar import FieldSpec
from .structure import affine_action_coeffs, decompose, irreducibility
from .sweep import sweep_points
from .tensorrep import build_tensor, check_affine_relations
from .weightvec import hwv_report

log = logging.getLogger("uqlab")

COMMANDS = ("relations", "decompose", "hwv", "coeffs", "irreducible", "rmatrix", "identity", "basis", "suite")


@dataclass
class RunConfig:
    command: str
    p: list
    k: int = 1
    z1: str = "2"
    z2: str = "3"
    x: str = "1"
    y: str = "5"
    backend: str = "exact"
    tol: float = 1e-9
    l: str = "1"
    identity_z1: str = "4"
    identity_z2: str = "5"
    mn_max: int = 8
    sweep: int = 0
    seed: int = 0
    jobs: int = 1
    report: str | None = None

    def public(self) -> dict:
        d = asdict(self)
        d.pop("report")
        d.pop("jobs")
        return d


def _int_range(text: str) -> list[int]:
    """'3', '1..4' or '3,5,7'."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, list or range, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uqlab", description="Verify root-of-unity representations of affine U_q(sl2).")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", default="3" if name != "suite" else "3,5", help="odd p, list or range (default 3)")
        sp.add_argument("--k", type=int, default=1, help="q = zeta_p^k")
        sp.add_argument("--z1", default="2")
        sp.add_argument("--z2", default="3")
        sp.add_argument("--x", default="1")
        sp.add_argument("--y", default="5")
        sp.add_argument("--backend", choices=("exact", "float"), default="exact")
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1, help="worker threads, capped by UQLAB_THREADS")
        sp.add_argument("--report", help="write the JSON report here ('-' for stdout)")
        if name in ("irreducible", "basis", "rmatrix", "suite"):
            sp.add_argument("--sweep", type=int, default=0, help="also run over N sweep points (includes all rays)")
        if name in ("identity", "suite"):
            sp.add_argument("--l", default="1", help="l, list or range")
            sp.add_argument("--iz1", default="4", help="integer z1 for the identity, list or range")
            sp.add_argument("--iz2", default="5", help="integer z2 for the identity, list or range")
            sp.add_argument("--mn-max", type=int, default=8, help="factorial form checked at q=1 for m, n <= this")
    return ap


def _config(ns) -> RunConfig:
    return RunConfig(
        command=ns.command,
        p=_int_range(ns.p),
        k=ns.k,
        z1=ns.z1,
        z2=ns.z2,
        x=ns.x,
        y=ns.y,
        backend=ns.backend,
        tol=ns.tol,
        l=getattr(ns, "l", "1"),
        identity_z1=getattr(ns, "iz1", "4"),
        identity_z2=getattr(ns, "iz2", "5"),
        mn_max=getattr(ns, "mn_max", 8),
        sweep=getattr(ns, "sweep", 0),
        seed=ns.seed,
        jobs=ns.jobs,
        report=ns.report,
    )


def _validate(cfg: RunConfig) -> None:
    for p in cfg.p:
        if p > MAX_P:
            raise ParameterError(f"p={p} exceeds the supported maximum {MAX_P}")
        FieldSpec(cfg.backend, p, cfg.k, cfg.tol)
    if cfg.command in ("identity", "suite"):
        for l in _int_range(cfg.l):
            if l < 1:
                raise ParameterError(f"identity needs l >= 1, got {l}")
        for z in _int_range(cfg.identity_z1) + _int_range(cfg.identity_z2):
            if z < max(_int_range(cfg.l)):
                raise ParameterError("identity weights must be >= l")
    if cfg.sweep < 0 or cfg.mn_max < 0:
        raise ParameterError("counts must be non-negative")


# Individual checks on one tensor module.


def _relations(t):
    return check_affine_relations(t)


def _decompose(t):
    return decompose(t).report


def _coeffs(t):
    return affine_action_coeffs(t).report


def _basis(t):
    return [basis_check(t, "delta"), basis_check(t, "dual")]


TENSOR_CHECKS = {
    "relations": _relations,
    "decompose": _decompose,
    "hwv": hwv_report,
    "coeffs": _coeffs,
    "irreducible": irreducibility,
    "rmatrix": check_rmatrix,
    "basis": _basis,
}


def _tensor_tasks(cfg: RunConfig, names) -> list:
    """(check function, tensor) pairs; sweeps add every sweep point for sweepable checks."""
    tasks = []
    for p in cfg.p:
        field = FieldSpec(cfg.backend, p, cfg.k, cfg.tol)
        t = build_tensor(field, *(field.parse(v) for v in (cfg.z1, cfg.x, cfg.z2, cfg.y)))
        for name in names:
            tasks.append((TENSOR_CHECKS[name], t))
        if cfg.sweep:
            for pt in sweep_points(field, cfg.sweep, cfg.seed):
                ts = build_tensor(field, pt.z1, pt.x, pt.z2, pt.y)
                for name in names:
                    if name in ("irreducible", "basis", "rmatrix"):
                        tasks.append((TENSOR_CHECKS[name], ts))
    return tasks


def factorial_form_report(mn_max: int) -> CheckReport:
    """Factorial form at q = 1 for all l <= min(m, n) <= mn_max, plus the generic-q counterexample."""
    rep = CheckReport("factorial-form", {"mn_max": mn_max})
    bad = []
    count = 0
    for m in range(mn_max + 1):
        for n in range(mn_max + 1):
            for l in range(min(m, n) + 1):
                count += 1
                lhs, rhs = factorial_form_classical(m, n, l)
                plhs, prhs = factorial_form_sides(m, n, l)
                if lhs != rhs or plhs.at_q_equals_one() != prhs.at_q_equals_one():
                    bad.append([m, n, l])
    g_lhs, g_rhs = factorial_form_sides(1, 1, 1)
    rep.witness.update(
        cases=count,
        classical_failures=bad,
        generic_q_counterexample={"m": 1, "n": 1, "l": 1, "lhs": g_lhs, "rhs": g_rhs, "equal": g_lhs == g_rhs},
    )
    if bad:
        rep.fail()
    return rep


def _identity_tasks(cfg: RunConfig) -> list:
    tasks = []
    for l in _int_range(cfg.l):
        for z1 in _int_range(cfg.identity_z1):
            for z2 in _int_range(cfg.identity_z2):
                tasks.append((verify_identity, (l, z1, z2)))
    if cfg.mn_max:
        tasks.append((factorial_form_report, (cfg.mn_max,)))
    return tasks


def _run_task(task) -> list[CheckReport]:
    fn, arg = task
    args = arg if isinstance(arg, tuple) else (arg,)
    t0 = time.perf_counter()
    try:
        out = fn(*args)
    except UqlabError as exc:
        params = args[0].params() if hasattr(args[0], "params") else {"args": list(args)}
        return [CheckReport(getattr(fn, "__name__", "check"), params, ERROR, {"error": str(exc)})]
    out = out if isinstance(out, list) else [out]
    ms = int((time.perf_counter() - t0) * 1000)
    for r in out:
        r.elapsed_ms = ms // len(out)
    return out


def _workers(requested: int) -> int:
    cap = os.environ.get("UQLAB_THREADS")
    n = max(1, requested)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            log.warning("ignoring non-integer UQLAB_THREADS=%r", cap)
    return n


def execute(cfg: RunConfig) -> list[CheckReport]:
    if cfg.command == "suite":
        names = list(TENSOR_CHECKS)
    elif cfg.command == "identity":
        names = []
    else:
        names = [cfg.command]
    tasks = _tensor_tasks(cfg, names) if names else []
    if cfg.command in ("identity", "suite"):
        tasks += _identity_tasks(cfg)
    workers = _workers(cfg.jobs)
    if workers == 1:
        chunks = [_run_task(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task, tasks))
    return [r for chunk in chunks for r in chunk]


def _summary(rep: CheckReport) -> str:
    extra = ""
    verdict = rep.witness.get("verdict")
    if verdict:
        extra = f" {verdict}"
    if rep.status == ERROR and "error" in rep.witness:
        extra += f" ({rep.witness['error']})"
    p = rep.params.get("p", "")
    return f"{rep.check:<18} p={p:<3} {rep.status}{extra}"


def emit_report(reports, cfg: RunConfig, path: str) -> None:
    text = dumps_reports(reports, cfg.public(), __version__)
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("UQLAB_LOG", "INFO"), format="%(name)s: %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(ns)
        _validate(cfg)
        log.info("seed=%d", cfg.seed)
        reports = execute(cfg)
    except (ParameterError, argparse.ArgumentTypeError) as exc:
        print(f"uqlab: error: {exc}", file=sys.stderr)
        return 2
    if not reports:
        print("uqlab: error: no results", file=sys.stderr)
        return 2
    stream = sys.stderr if cfg.report == "-" else sys.stdout
    for rep in reports:
        print(_summary(rep), file=stream)
    if cfg.report:
        try:
            emit_report(reports, cfg, cfg.report)
        except OSError as exc:
            print(f"uqlab: error: cannot write report: {exc}", file=sys.stderr)
            return 2
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
