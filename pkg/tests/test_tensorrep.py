import pytest

from uqlab.conditions import check_conditions, cond2_ray, cond3_ray
from uqlab.errors import ParameterError
from uqlab.scalar import FieldSpec
from uqlab.tensorrep import GENERATORS, build_tensor, check_affine_relations, degree_space_dims, k1_eigenspace_dims

from conftest import field, tensor


@pytest.mark.parametrize("backend,p", [("exact", 3), ("exact", 5), ("float", 3), ("float", 7), ("float", 9)])
def test_relations_hold(backend, p):
    rep = check_affine_relations(tensor(backend, p))
    assert rep.passed, rep.witness


def test_relations_at_other_root():
    f = FieldSpec("exact", 5, 2)
    assert check_affine_relations(build_tensor(f, 2, 1, 3, 5)).passed


def test_tampered_generator_fails():
    t = tensor("exact", 3)
    f = t.field
    bad = t.with_generator("e0", t.gens["e0"] * f.const(2) + t.gens["f1"])
    rep = check_affine_relations(bad)
    assert not rep.passed
    assert "relation" in rep.witness


def test_flat_index_and_degrees(t3):
    assert t3.index(1, 2) == 5
    assert t3.degree_indices(2) == [2, 4, 6]
    assert degree_space_dims(t3) == [1, 2, 3, 2, 1]
    assert set(GENERATORS) <= set(t3.gens)


def test_k1_eigenspaces_merge_degrees(t3):
    # Degrees l and l + p share a K1 eigenvalue, so each eigenspace has dimension p.
    assert k1_eigenspace_dims(t3) == {0: 3, 1: 3, 2: 3}


def test_swapped(t3):
    s = t3.swapped
    assert (s.z1, s.x, s.z2, s.y) == (t3.z2, t3.y, t3.z1, t3.x)


def test_zero_parameter_rejected():
    with pytest.raises(ParameterError):
        build_tensor(field("exact", 3), 2, 0, 3, 5)


@pytest.mark.parametrize("p", [3, 5])
def test_rays_violate_their_condition(p):
    f = field("exact", p)
    z1, z2, x = f.const(2), f.const(3), f.one
    for l in range(1, p):
        c = check_conditions(f, z1, z2, x, cond2_ray(f, z1, z2, x, l))
        assert not c.cond2.ok and c.cond2.witness["l"] == l and c.cond3.ok
        c = check_conditions(f, z1, z2, x, cond3_ray(f, z1, z2, x, l))
        assert not c.cond3.ok and c.cond3.witness["l"] == l and c.cond2.ok


def test_default_point_is_generic():
    assert check_conditions(field("exact", 3), 2, 3, 1, 5).generic


def test_condition1_fails_on_unit_circle():
    f = field("exact", 3)
    c = check_conditions(f, f.q, 3, 1, 5)
    assert not c.cond1.ok
