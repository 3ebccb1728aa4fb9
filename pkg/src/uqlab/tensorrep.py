"""The tensor product V_{z1}(x) (x) V_{z2}(y) of two evaluation modules."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .errors import ParameterError
from .linalg import matrix_is_zero, matrix_scale, rank
from .matrix import SparseMatrix
from .modrep import AffineImages, build_module, evaluate_affine
from .report import CheckReport
from .scalar import FieldSpec, qint

GENERATORS = ("e0", "e1", "f0", "f1", "K0", "K1")


@dataclass(frozen=True)
class TensorModule:
    """Basis v_i (x) w_j sits at flat index i*p + j; the first factor carries (z1, x)."""

    field: FieldSpec
    z1: object
    x: object
    z2: object
    y: object
    gens: dict = dc_field(repr=False, compare=False)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.field.p ** 2

    def __getattr__(self, name):
        gens = self.__dict__.get("gens")
        if gens is not None and name in gens:
            return gens[name]
        raise AttributeError(name)

    def index(self, i: int, j: int) -> int:
        return i * self.p + j

    def degree_indices(self, l: int) -> list[int]:
        """Flat indices with i + j = l, ordered by increasing i."""
        p = self.p
        return [self.index(i, l - i) for i in range(max(0, l - p + 1), min(l, p - 1) + 1)]

    def params(self) -> dict:
        f = self.field
        return {
            **f.describe(),
            "z1": f.format(self.z1),
            "z2": f.format(self.z2),
            "x": f.format(self.x),
            "y": f.format(self.y),
        }

    def apply(self, gen: str, vec) -> list:
        return self.gens[gen].apply(vec, self.field.zero)

    def basis_vector(self, i: int, j: int) -> list:
        v = [self.field.zero] * self.dim
        v[self.index(i, j)] = self.field.one
        return v

    @cached_property
    def swapped(self) -> TensorModule:
        """V_{z2}(y) (x) V_{z1}(x): the target of the intertwiner."""
        return build_tensor(self.field, self.z2, self.y, self.z1, self.x)

    def with_generator(self, name: str, matrix: SparseMatrix) -> TensorModule:
        gens = dict(self.gens)
        gens[name] = matrix
        return TensorModule(self.field, self.z1, self.x, self.z2, self.y, gens)


def _coproduct(a: AffineImages, b: AffineImages, one) -> dict[str, SparseMatrix]:
    """(ev_x (x) ev_y) of e_i -> e_i(x)K_i + 1(x)e_i, f_i -> f_i(x)1 + K_i^{-1}(x)f_i."""
    p = a.e0.nrows
    I = SparseMatrix.identity(p, one)
    gens = {}
    for i in ("0", "1"):
        e_a, e_b = getattr(a, "e" + i), getattr(b, "e" + i)
        f_a, f_b = getattr(a, "f" + i), getattr(b, "f" + i)
        K_a, K_b = getattr(a, "K" + i), getattr(b, "K" + i)
        Kinv_a, Kinv_b = getattr(a, f"K{i}inv"), getattr(b, f"K{i}inv")
        gens["e" + i] = e_a.kron(K_b) + I.kron(e_b)
        gens["f" + i] = f_a.kron(I) + Kinv_a.kron(f_b)
        gens["K" + i] = K_a.kron(K_b)
        gens[f"K{i}inv"] = Kinv_a.kron(Kinv_b)
    return gens


def build_tensor(field: FieldSpec, z1, x, z2, y) -> TensorModule:
    z1, x, z2, y = (field.const(v) for v in (z1, x, z2, y))
    for name, v in (("z1", z1), ("x", x), ("z2", z2), ("y", y)):
        if field.is_zero(v):
            raise ParameterError(f"parameter {name} must be nonzero")
    a = evaluate_affine(build_module(field, z1), x)
    b = evaluate_affine(build_module(field, z2), y)
    return TensorModule(field, z1, x, z2, y, _coproduct(a, b, field.one))


def _relations(t: TensorModule):
    """Yield (name, residual matrix) for every defining relation, lazily."""
    f = t.field
    g = t.gens
    n = t.dim
    I = SparseMatrix.identity(n, f.one)
    denom = f.inv(f.q - f.qpow(-1))
    c3 = qint(3, f)
    # Cartan matrix of affine sl2: a_ii = 2, a_01 = a_10 = -2.
    for i in "01":
        yield f"K{i}*K{i}inv=1", g[f"K{i}"] @ g[f"K{i}inv"] - I
    yield "K0*K1=K1*K0", g["K0"] @ g["K1"] - g["K1"] @ g["K0"]
    for i in "01":
        for j in "01":
            a = 2 if i == j else -2
            Ki, Kiinv = g[f"K{i}"], g[f"K{i}inv"]
            yield f"K{i}*e{j}*K{i}inv=q^{a}*e{j}", Ki @ g[f"e{j}"] @ Kiinv - g[f"e{j}"] * f.qpow(a)
            yield f"K{i}*f{j}*K{i}inv=q^{-a}*f{j}", Ki @ g[f"f{j}"] @ Kiinv - g[f"f{j}"] * f.qpow(-a)
    for i in "01":
        e, fi = g[f"e{i}"], g[f"f{i}"]
        yield f"[e{i},f{i}]", e @ fi - fi @ e - (g[f"K{i}"] - g[f"K{i}inv"]) * denom
    for i, j in (("0", "1"), ("1", "0")):
        yield f"[e{i},f{j}]", g[f"e{i}"] @ g[f"f{j}"] - g[f"f{j}"] @ g[f"e{i}"]
    for kind in "ef":
        for i, j in (("0", "1"), ("1", "0")):
            A, B = g[f"{kind}{i}"], g[f"{kind}{j}"]
            A2 = A @ A
            A3 = A2 @ A
            serre = A3 @ B - (A2 @ B @ A) * c3 + (A @ B @ A2) * c3 - B @ A3
            yield f"serre-{kind}{i}{j}", serre


def check_affine_relations(t: TensorModule) -> CheckReport:
    """Every relation of the affine presentation, as matrix identities."""
    f = t.field
    rep = CheckReport("affine-relations", t.params())
    base = matrix_scale(f, *(t.gens[k] for k in t.gens))
    scale = max(1.0, base) ** 4
    failed = []
    checked = 0
    for name, resid in _relations(t):
        checked += 1
        ok, biggest = matrix_is_zero(f, resid, scale)
        if not ok:
            failed.append({"relation": name, "max_abs": biggest})
    rep.witness["relations_checked"] = checked
    if failed:
        rep.fail(relation=failed[0]["relation"], violations=failed)
    return rep


def degree_space_dims(t: TensorModule) -> list[int]:
    """Dimensions of span{v_i (x) w_j : i + j = l}, l = 0..2p-2."""
    return [len(t.degree_indices(l)) for l in range(2 * t.p - 1)]


def k1_eigenspace_dims(t: TensorModule) -> dict[int, int]:
    """Eigenvalue z1 z2 q^{-2l} of K1, keyed by l mod p, measured by rank of K1 - lambda."""
    f = t.field
    out = {}
    K1 = t.gens["K1"]
    for l in range(t.p):
        lam = t.z1 * t.z2 * f.qpow(-2 * l)
        shifted = K1 - SparseMatrix.identity(t.dim, lam)
        cols = [[shifted[r, c] for r in range(t.dim)] for c in range(t.dim)]
        out[l] = t.dim - rank(f, cols, t.dim)
    return out
