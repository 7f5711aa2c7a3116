from __future__ import annotations

import random

import pytest

from gk3.errors import ValidationError
from gk3.lattices import discriminant
from gk3.mukai import (
    GenericClass,
    check_gcy,
    coh_class,
    deg2_vector,
    exponential_class,
    support_lattice,
    two_form_class,
)
from gk3.pairs import (
    classify_hk_pair,
    cross_pairings,
    neron_severi,
    ns_and_transcendental,
    signature_profile,
    transcendental,
    transform_pair,
    validate_gk3,
)
from gk3.scalars import as_complex


def _kahler_class(n: int = 1):
    return check_gcy(exponential_class([0] * 22, deg2_vector({0: 1, 1: n})))


def _holomorphic_form(n: int = 1):
    return check_gcy(
        two_form_class(deg2_vector({2: 1, 3: n}), deg2_vector({4: 1, 5: n}))
    )


def test_validate_standard_pair():
    x = validate_gk3(_kahler_class(), _holomorphic_form())
    assert x.status == "Verified"
    diag = [str(x.pi.gram[i][i]) for i in range(4)]
    assert diag == ["2", "2", "2", "2"]
    off = [x.pi.gram[i][j] for i in range(4) for j in range(4) if i != j]
    assert all(v.is_zero for v in off)


def test_validate_accepts_raw_classes():
    raw_a = exponential_class([0] * 22, deg2_vector({0: 1, 1: 1}))
    raw_b = two_form_class(deg2_vector({2: 1, 3: 1}), deg2_vector({4: 1, 5: 1}))
    assert validate_gk3(raw_a, raw_b).status == "Verified"


def test_validate_rejects_norm_mismatch():
    scaled = check_gcy(_holomorphic_form().coh.scale(2))  # norm 16 vs 4
    with pytest.raises(ValidationError, match="norm mismatch: 4 vs 16"):
        validate_gk3(_kahler_class(), scaled)


def test_validate_rejects_crossing_planes():
    # sigma sharing the U block of omega pairs nontrivially with Im phiA
    crossing = check_gcy(
        two_form_class(deg2_vector({0: 1, 1: 1}), deg2_vector({4: 1, 5: 1}))
    )
    with pytest.raises(ValidationError, match="planes not orthogonal"):
        validate_gk3(_kahler_class(), crossing)


def test_generic_member_gives_formal_status():
    sigma = _holomorphic_form()
    ns_prime = neron_severi(validate_gk3(_kahler_class(), sigma))
    x = validate_gk3(GenericClass(ns_prime, "A"), sigma)
    assert x.status == "FormalGeneric"
    assert x.pi is None


def test_cross_pairings_of_orthogonal_pair_vanish():
    values = cross_pairings(_kahler_class(), _holomorphic_form())
    assert all(v.is_zero for v in values)


def test_ns_and_transcendental_of_standard_pair():
    x = validate_gk3(_kahler_class(), _holomorphic_form())
    ns, t = ns_and_transcendental(x)
    ns_l = ns.induced_lattice()
    t_l = t.induced_lattice()
    assert ns_l.rank == 22
    assert ns_l.signature().as_tuple() == (2, 20, 0)
    assert discriminant(ns_l) == (2, 2)
    assert t_l.rank == 22
    assert t_l.signature().as_tuple() == (2, 20, 0)


def test_swap_duality():
    a, b = _kahler_class(), _holomorphic_form()
    x = validate_gk3(a, b)
    y = validate_gk3(b, a)
    assert neron_severi(y).basis == transcendental(x).basis
    assert transcendental(y).basis == neron_severi(x).basis


def test_signature_profile():
    prof = signature_profile(validate_gk3(_kahler_class(), _holomorphic_form()))
    assert prof.ns_signature == (2, 20, 0)
    assert prof.t_signature == (2, 20, 0)
    assert prof.intersection_rank == 20
    assert prof.intersection_signature == (0, 20, 0)


def test_classify_standard_case():
    out = classify_hk_pair(validate_gk3(_kahler_class(), _holomorphic_form()))
    assert out.case == "B-with-A"
    assert out.orthogonal
    assert out.norms_match
    assert out.identities == ()


def test_classify_type_a_partner_identities():
    """Two type A classes are partners when omega, omega' and the relative
    b-field are mutually orthogonal and B_rel^2 = omega^2 + omega'^2."""
    a = _kahler_class()  # omega = e1 + f1
    b_rel = deg2_vector({4: 1, 5: 2})  # square 4 = 2 + 2
    partner = check_gcy(exponential_class(b_rel, deg2_vector({2: 1, 3: 1})))
    out = classify_hk_pair(validate_gk3(a, partner))
    assert out.case == "A-with-A"
    assert out.orthogonal and out.norms_match
    names = [i.name for i in out.identities]
    assert names == [
        "omega wedge omega'",
        "omega wedge B_rel",
        "omega' wedge B_rel",
        "B_rel^2 - omega^2 - omega'^2",
        "|lambda|^2 omega^2 matches",
    ]
    assert all(i.holds for i in out.identities)


def test_classify_reports_broken_identity():
    # b-field square 2 breaks B_rel^2 = omega^2 + omega'^2
    bad = check_gcy(exponential_class(deg2_vector({4: 1, 5: 1}), deg2_vector({2: 1, 3: 1})))
    out = classify_hk_pair(_kahler_class(), bad)
    assert out.case == "A-with-A"
    assert not out.orthogonal
    broken = {i.name: i.holds for i in out.identities}
    assert broken["B_rel^2 - omega^2 - omega'^2"] is False
    assert broken["omega wedge omega'"] is True


def test_classify_rejects_generic_members():
    sigma = _holomorphic_form()
    x = validate_gk3(GenericClass(neron_severi(validate_gk3(_kahler_class(), sigma)), "A"), sigma)
    with pytest.raises(ValidationError, match="explicit"):
        classify_hk_pair(x)


def test_transform_pair_is_equivariant():
    rng = random.Random(59)
    x = validate_gk3(_kahler_class(), _holomorphic_form())
    for _ in range(5):
        b = [rng.randint(-1, 1) for _ in range(22)]
        moved = transform_pair(b, x)
        assert moved.status == "Verified"
        # supports move together, so both complements just get relabeled
        assert neron_severi(moved).induced_lattice().signature().as_tuple() == (2, 20, 0)
        prof = signature_profile(moved)
        assert prof.ns_signature == (2, 20, 0)


def test_transform_pair_moves_generic_supports():
    sigma = _holomorphic_form()
    ns_prime = neron_severi(validate_gk3(_kahler_class(), sigma))
    x = validate_gk3(GenericClass(ns_prime, "A"), sigma)
    moved = transform_pair([1] + [0] * 21, x)
    assert moved.status == "FormalGeneric"
    assert isinstance(moved.phi_a, GenericClass)
    assert len(moved.phi_a.support.basis) == 22
