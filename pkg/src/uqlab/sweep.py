"""Deterministic parameter sweeps covering every condition-violating ray."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .conditions import check_condition1, check_conditions, cond2_ray, cond3_ray
from .scalar import FieldSpec

BASE = (2, 3, 1)


@dataclass(frozen=True)
class SweepPoint:
    z1: object
    z2: object
    x: object
    y: object
    label: str


def _random_scalar(field: FieldSpec, rng: random.Random):
    a = Fraction(rng.randint(1, 9), rng.randint(1, 5)) * rng.choice((1, -1))
    if field.exact:
        v = field.const(a)
        if rng.random() < 0.5:
            v = v + field.w_power(rng.randint(1, field.p - 1)) * rng.randint(1, 3)
        return v
    return complex(float(a), rng.uniform(-1, 1))


def _random_weights(field: FieldSpec, rng: random.Random):
    for _ in range(100):
        z1, z2 = _random_scalar(field, rng), _random_scalar(field, rng)
        if field.is_zero(z1) or field.is_zero(z2):
            continue
        if check_condition1(field, z1, z2).ok:
            return z1, z2
    raise RuntimeError("could not draw weights satisfying Condition 1")


def sweep_points(field: FieldSpec, n: int = 20, seed: int = 0) -> list[SweepPoint]:
    """All 2(p-1) rays at the base point, the same rays at a random base, then random fill to n."""
    rng = random.Random(seed)
    p = field.p
    pts = []
    z1, z2, x = (field.const(v) for v in BASE)
    bases = [(z1, z2, x, "base"), (*_random_weights(field, rng), _random_scalar(field, rng), "random-base")]
    for bz1, bz2, bx, tag in bases:
        if field.is_zero(bx):
            bx = field.one
        for l in range(1, p):
            pts.append(SweepPoint(bz1, bz2, bx, cond2_ray(field, bz1, bz2, bx, l), f"{tag}:cond2:l={l}"))
            pts.append(SweepPoint(bz1, bz2, bx, cond3_ray(field, bz1, bz2, bx, l), f"{tag}:cond3:l={l}"))
    pts.append(SweepPoint(z1, z2, x, field.const(5), "base:default"))
    k = 0
    while len(pts) < n:
        k += 1
        rz1, rz2 = _random_weights(field, rng)
        rx, ry = _random_scalar(field, rng), _random_scalar(field, rng)
        if field.is_zero(rx) or field.is_zero(ry):
            continue
        pts.append(SweepPoint(rz1, rz2, rx, ry, f"random:{k}"))
    return pts


def classify(field: FieldSpec, pt: SweepPoint):
    return check_conditions(field, pt.z1, pt.z2, pt.x, pt.y)
