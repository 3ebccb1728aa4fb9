import pytest

from uqlab.basisnew import basis_check, build_family, delta_family, lambda_family
from uqlab.conditions import cond2_ray, cond3_ray
from uqlab.tensorrep import build_tensor

from conftest import field, tensor


@pytest.mark.parametrize("backend,p", [("exact", 3), ("exact", 5), ("float", 5)])
def test_generic_point_families_are_bases(backend, p):
    t = tensor(backend, p)
    for kind in ("delta", "dual"):
        rep = basis_check(t, kind)
        assert rep.passed and rep.witness["basis"] and rep.witness["rank"] == p * p


def test_delta_determinant_normalisation(t5):
    for l in range(5):
        cmp = delta_family(t5, l).comparison
        assert cmp["zero_locus_agrees"]
        if l == 0:
            assert cmp["determinant_is_one"]
        elif cmp["status"] == "proportional":
            assert cmp["normalised_ratio_is_superfactorial"]


@pytest.mark.parametrize("p", [3, 5])
def test_verdicts_track_conditions_on_rays(p):
    f = field("exact", p)
    z1, z2, x = f.const(2), f.const(3), f.one
    for l in range(1, p):
        t2 = build_tensor(f, z1, x, z2, cond2_ray(f, z1, z2, x, l))
        t3 = build_tensor(f, z1, x, z2, cond3_ray(f, z1, z2, x, l))
        assert basis_check(t2, "delta").witness["basis"] is True
        assert basis_check(t2, "dual").witness["basis"] is False
        assert basis_check(t3, "delta").witness["basis"] is False
        assert basis_check(t3, "dual").witness["basis"] is True
        assert any(basis_check(t3, "delta").witness["delta_determinants_zero"])


def test_literal_seed_never_spans(t3, t5):
    assert basis_check(t3, "dual").witness["literal_phi0_rank"] == 4
    assert basis_check(t5, "dual").witness["literal_phi0_rank"] == 9


def test_lambda_top_family(t3):
    fam = lambda_family(t3, 0)
    assert len(fam) == 3
    assert basis_check(t3, "delta").witness["lambda0_is_delta_top"]


def test_unknown_kind(t3):
    with pytest.raises(ValueError):
        build_family(t3, "other")
