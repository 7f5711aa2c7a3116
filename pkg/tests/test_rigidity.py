from __future__ import annotations

from fractions import Fraction

import pytest

from gk3.errors import ValidationError
from gk3.lattices import IntegralLattice, gauss_reduce2, ortho_complement
from gk3.mirror import build_si_mirror
from gk3.mukai import (
    GenericClass,
    check_gcy,
    deg2_vector,
    exponential_class,
    support_lattice,
    two_form_class,
)
from gk3.pairs import validate_gk3
from gk3.rigidity import (
    DEFAULT_H1,
    DEFAULT_H2,
    SurveyConfig,
    is_complex_rigid,
    is_kahler_rigid,
    kahler_rigid_survey,
)
from gk3.scalars import QuadScalar, as_quad

SQRT2 = QuadScalar(Fraction(0), Fraction(1), 2)


def _kahler(n: int = 1):
    return check_gcy(exponential_class([0] * 22, deg2_vector({0: 1, 1: n})))


def _sigma(n: int = 1):
    return check_gcy(
        two_form_class(deg2_vector({2: 1, 3: n}), deg2_vector({4: 1, 5: n}))
    )


def _generic_partner(explicit):
    return GenericClass(ortho_complement(support_lattice(explicit)), "B")


def test_complex_rigid_on_shioda_inose_member():
    fam_x, _ = build_si_mirror(1)
    out = is_complex_rigid(fam_x.member)
    assert out.kind == "ComplexRigid"
    assert out.is_rigid
    assert out.invariant == ((2, 0), (0, 2))
    assert out.b_rational is True
    assert out.b_canonical is False


def test_complex_rigid_wrong_type():
    out = is_complex_rigid(validate_gk3(_sigma(), _kahler()))
    assert out.kind == "NotRigid"
    assert out.reason == "phi_B has type A, needs type B"


def test_complex_rigid_rank_gate():
    # both components of sigma pick up an E8 generator under sqrt(2), so
    # the support has rank 4 and the Neron-Severi complement only rank 20
    re = tuple(as_quad(a) + SQRT2 * as_quad(b)
               for a, b in zip(deg2_vector({2: 2, 3: 2}), deg2_vector({6: 1})))
    im = tuple(as_quad(a) + SQRT2 * as_quad(b)
               for a, b in zip(deg2_vector({4: 2, 5: 2}), deg2_vector({14: 1})))
    wide = check_gcy(two_form_class(re, im))
    assert len(support_lattice(wide).basis) == 4
    x = validate_gk3(check_gcy(exponential_class([0] * 22, deg2_vector({0: 1, 1: 2}))), wide)
    out = is_complex_rigid(x)
    assert out.kind == "NotRigid"
    assert out.reason == "rank NS = 20, needs 22"


def test_complex_rigid_generic_needs_explicit_class():
    x = validate_gk3(_kahler(), GenericClass(support_lattice(_sigma()), "B"))
    with pytest.raises(ValidationError, match="explicit phi_B"):
        is_complex_rigid(x)


def test_kahler_rigid_on_shioda_inose_member():
    _, fam_dual = build_si_mirror(1)
    out = is_kahler_rigid(fam_dual.member)
    assert out.kind == "KahlerRigid"
    assert out.invariant == ((2, 0), (0, 2))
    assert out.b_rational is True
    assert out.b_canonical is True
    assert out.omega_sq == as_quad(2)


def test_kahler_rigid_quadratic_field_case():
    omega = tuple(SQRT2 * as_quad(v) for v in deg2_vector({0: 1, 1: 1}))
    cls = check_gcy(exponential_class([0] * 22, omega))
    out = is_kahler_rigid(validate_gk3(cls, _generic_partner(cls)))
    assert out.kind == "KahlerRigid"
    assert out.invariant == ((2, 0), (0, 4))
    assert out.omega_sq == as_quad(4)
    assert out.b_rational is True


def test_kahler_rigid_wrong_type():
    out = is_kahler_rigid(validate_gk3(_sigma(), _kahler()))
    assert out.kind == "NotRigid"
    assert out.reason == "phi_A has type B, needs type A"


def test_kahler_rigid_rejects_irrational_bfield_by_rank():
    # an irrational b-field inflates the support past rank 2
    b_irr = tuple(SQRT2 * as_quad(v) for v in deg2_vector({0: 1, 1: 1}))
    cls = check_gcy(exponential_class(b_irr, deg2_vector({2: 1, 3: 1})))
    out = is_kahler_rigid(validate_gk3(cls, _generic_partner(cls)))
    assert out.kind == "NotRigid"
    assert out.reason == "rank T = 21, needs 22"


def test_kahler_invariant_under_bfield_shifts():
    base = deg2_vector({0: 1, 1: 1})
    # integral shifts act by a unimodular matrix, so the reduced form is fixed
    cls = check_gcy(exponential_class(deg2_vector({2: 1, 3: 1}), base))
    out = is_kahler_rigid(validate_gk3(cls, _generic_partner(cls)))
    assert out.kind == "KahlerRigid"
    assert out.invariant == ((2, 0), (0, 2))
    # rational shifts move the support lattice but keep it rank 2, even, pd
    for p, q in ((Fraction(1, 2), Fraction(0)), (Fraction(1, 3), Fraction(2, 3))):
        b = tuple(p * u + q * v for u, v in zip(DEFAULT_H1, DEFAULT_H2))
        shifted = check_gcy(exponential_class(b, base))
        got = is_kahler_rigid(validate_gk3(shifted, _generic_partner(shifted)))
        assert got.kind == "KahlerRigid"
        a, c = got.invariant[0][0], got.invariant[1][1]
        bb = got.invariant[0][1]
        assert a % 2 == 0 and c % 2 == 0
        assert a > 0 and a * c - bb * bb > 0
        assert got.b_rational is True and got.omega_sq == as_quad(2)


def test_survey_config_validation():
    with pytest.raises(ValidationError):
        SurveyConfig(0, 1)
    with pytest.raises(ValidationError):
        SurveyConfig(4, 0)
    with pytest.raises(ValidationError):
        SurveyConfig(4, 1, h1=(1, 2, 3))


def test_survey_small_grid():
    report = kahler_rigid_survey(SurveyConfig(4, 2))
    assert report.samples == 40
    assert report.achieved == (((2, 0), (0, 2)),)
    assert report.missing == (((2, 1), (1, 2)),)
    gram, witness = report.witnesses[0]
    assert gram == ((2, 0), (0, 2))
    # replay the witness and confirm it reproduces the form
    cls = check_gcy(exponential_class(witness.bfield, witness.omega))
    sup = support_lattice(cls)
    assert gauss_reduce2(sup.induced_lattice()).lattice.gram == gram


def test_survey_is_deterministic():
    a = kahler_rigid_survey(SurveyConfig(4, 2, sqrt_d=(2,)))
    b = kahler_rigid_survey(SurveyConfig(4, 2, sqrt_d=(2,)))
    assert a == b


def test_survey_achieved_forms_are_reduced_fixed_points():
    report = kahler_rigid_survey(SurveyConfig(8, 2, sqrt_d=(2,)))
    assert ((2, 0), (0, 4)) in report.achieved
    for gram in report.achieved:
        assert gauss_reduce2(IntegralLattice(gram)).lattice.gram == gram
