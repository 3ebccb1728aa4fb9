import pytest

from uqlab.conditions import cond2_ray, cond3_ray
from uqlab.errors import ConditionError
from uqlab.rmat import build_rcheck, check_rmatrix, commutes, intertwiner_space, projectors
from uqlab.tensorrep import build_tensor
from uqlab.weightvec import highest_vectors

from conftest import field, tensor


@pytest.mark.parametrize("backend,p", [("exact", 3), ("exact", 5), ("float", 3)])
def test_rcheck_commutes(backend, p):
    rc = build_rcheck(tensor(backend, p))
    assert all(ok for ok, _ in commutes(rc).values())


def test_rcheck_maps_top_vector(t3):
    rc = build_rcheck(t3)
    f = t3.field
    image = rc.matrix.apply(highest_vectors(t3)[0].coeffs, f.zero)
    assert image == highest_vectors(t3.swapped)[0].coeffs
    assert rc.c[0] == f.one


def test_printed_ratios_match_after_normalisation(t5):
    rc = build_rcheck(t5)
    entries = rc.metadata["printed_ratios"]
    assert entries and all(e["converted_match"] for e in entries)


def test_projectors_sum_to_identity(t3):
    f = t3.field
    P = projectors(t3)
    total = P[0]
    for m in P[1:]:
        total = total + m
    for i in range(t3.dim):
        for j in range(t3.dim):
            assert total[i, j] == (f.one if i == j else f.zero)


def test_generic_commutant_is_one_dimensional(t3):
    space = intertwiner_space(t3)
    assert space.dimension == 1 and space.invertible


@pytest.mark.parametrize("ray", [cond2_ray, cond3_ray])
def test_violation_has_no_invertible_intertwiner(ray):
    f = field("exact", 3)
    z1, z2, x = f.const(2), f.const(3), f.one
    for l in (1, 2):
        t = build_tensor(f, z1, x, z2, ray(f, z1, z2, x, l))
        space = intertwiner_space(t)
        assert not space.invertible
        rep = check_rmatrix(t)
        assert rep.passed and rep.witness["invertible_member"] is False
        with pytest.raises(ConditionError):
            build_rcheck(t)


def test_check_report_fields(t3):
    rep = check_rmatrix(t3)
    assert rep.passed
    assert rep.witness["space_dimension"] == 1
    assert rep.witness["rcheck_in_space"] and rep.witness["rcheck_invertible"]
