"""The three genericity conditions on (z1, z2, x, y)."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import ParameterError
from .scalar import FieldSpec, qbracket


@dataclass
class ConditionStatus:
    ok: bool
    witness: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": self.ok, **({"witness": self.witness} if not self.ok else {})}


@dataclass
class ConditionReport:
    cond1: ConditionStatus
    cond2: ConditionStatus
    cond3: ConditionStatus

    @property
    def generic(self) -> bool:
        return self.cond1.ok and self.cond2.ok and self.cond3.ok

    @property
    def irreducible_expected(self) -> bool:
        return self.cond2.ok and self.cond3.ok

    def to_dict(self) -> dict:
        return {"cond1": self.cond1.to_dict(), "cond2": self.cond2.to_dict(), "cond3": self.cond3.to_dict()}


def _bracket_zero(field: FieldSpec, z, n: int) -> bool:
    b = qbracket(z, n, field)
    m = field.magnitude(z)
    return field.is_zero(b, m + 1 / m)


def check_condition1(field: FieldSpec, z1, z2) -> ConditionStatus:
    p = field.p
    for j, z in ((1, z1), (2, z2)):
        for i in range(p + 1):
            if _bracket_zero(field, z, 1 - i):
                return ConditionStatus(False, {"part": "single", "j": j, "i": i})
    zz = z1 * z2
    for j in range(p):
        w = zz * field.qpow(-2 * j)
        for i in range(p + 1):
            if _bracket_zero(field, w, 1 - i):
                return ConditionStatus(False, {"part": "sum", "j": j, "i": i})
    return ConditionStatus(True)


def check_condition2(field: FieldSpec, z1, z2, x, y) -> ConditionStatus:
    """y/x != z1 z2 q^{-2(l-1)} for l = 1..p-1."""
    ratio = y * field.inv(x)
    for l in range(1, field.p):
        if field.eq(ratio, z1 * z2 * field.qpow(-2 * (l - 1))):
            return ConditionStatus(False, {"l": l})
    return ConditionStatus(True)


def check_condition3(field: FieldSpec, z1, z2, x, y) -> ConditionStatus:
    """y/x != (z1 z2)^{-1} q^{2(l-1)} for l = 1..p-1."""
    ratio = y * field.inv(x)
    zinv = field.inv(z1 * z2)
    for l in range(1, field.p):
        if field.eq(ratio, zinv * field.qpow(2 * (l - 1))):
            return ConditionStatus(False, {"l": l})
    return ConditionStatus(True)


def check_conditions(field: FieldSpec, z1, z2, x, y) -> ConditionReport:
    z1, z2, x, y = (field.const(v) for v in (z1, z2, x, y))
    for name, v in (("z1", z1), ("z2", z2), ("x", x), ("y", y)):
        if field.is_zero(v):
            raise ParameterError(f"parameter {name} must be nonzero")
    return ConditionReport(
        check_condition1(field, z1, z2),
        check_condition2(field, z1, z2, x, y),
        check_condition3(field, z1, z2, x, y),
    )


def conditions_of(t) -> ConditionReport:
    return check_conditions(t.field, t.z1, t.z2, t.x, t.y)


def cond2_ray(field: FieldSpec, z1, z2, x, l: int):
    """The y value violating Condition 2 at index l."""
    return x * z1 * z2 * field.qpow(-2 * (l - 1))


def cond3_ray(field: FieldSpec, z1, z2, x, l: int):
    """The y value violating Condition 3 at index l."""
    return x * field.inv(z1 * z2) * field.qpow(2 * (l - 1))
