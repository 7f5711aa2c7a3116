"""Rigidity classifiers and the Kaehler-rigid form survey.

A pair is complex rigid when phi_B has type B and the generalized
Neron-Severi lattice has full rank 22; its invariant is the reduced Gram
of the rank-2 support of the degree-2 period sigma, a positive definite
even form.  Dually, a pair is Kaehler rigid when phi_A has type A and the
generalized transcendental lattice has rank 22; there the invariant is
the reduced Gram of the rank-2 support of phi_A itself, which for
lambda e^{B + i omega} forces B rational and omega^2 rational.

The survey enumerates exponential classes over a fixed positive 2-plane
with bounded coefficient height and reports which reduced even positive
definite rank-2 forms are achieved as invariants.  Achieving every form
is an open question; the survey reports, it never asserts completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ValidationError
from .intlinalg import IntMat
from .lattices import (
    Sublattice,
    enumerate_reduced_forms,
    gauss_reduce2,
    ortho_complement,
)
from .mukai import (
    DEG2_RANK,
    K3,
    GCYClass,
    GenericClass,
    decompose_type_a,
    deg2_vector,
    exponential_class,
    check_gcy,
    member_support,
    pair_real,
    support_in,
)
from .pairs import GeneralizedK3
from .scalars import QuadScalar, as_quad

K3_GRAM = K3.gram

FULL_RANK = 22  # rank of NS/T certifying rigidity (codimension-2 support)


@dataclass(frozen=True)
class RigidityReport:
    """Outcome of a rigidity test.

    The invariant is present exactly when the kind is rigid; it is the
    Gauss-reduced Gram, even and positive definite.  For a Kaehler test
    b_rational and omega_sq describe the decomposition lambda e^{B+i omega};
    for a complex test b_rational refers to the degree-4 tail divided out
    by the period, which is only canonical up to classes orthogonal to the
    period (hence b_canonical is False there).
    """

    kind: str  # "ComplexRigid" | "KahlerRigid" | "NotRigid"
    reason: str | None = None
    invariant: IntMat | None = None
    b_rational: bool | None = None
    b_canonical: bool | None = None
    omega_sq: QuadScalar | None = None

    @property
    def is_rigid(self) -> bool:
        return self.kind != "NotRigid"


def _plane_rank_checks(member, which: str) -> tuple[Sublattice | None, RigidityReport | None]:
    """Shared support-rank gate; returns (support, None) or (None, verdict)."""
    support = member_support(member)
    complement_rank = ortho_complement(support).rank
    if complement_rank != FULL_RANK:
        label = "NS" if which == "B" else "T"
        return None, RigidityReport(
            "NotRigid", reason=f"rank {label} = {complement_rank}, needs {FULL_RANK}"
        )
    if isinstance(member, GenericClass):
        raise ValidationError(f"invariant needs explicit phi_{which}")
    return support, None


def is_complex_rigid(x: GeneralizedK3) -> RigidityReport:
    """Test complex rigidity of a pair and extract the rank-2 invariant.

    Requires phi_B of type B and generalized Neron-Severi rank 22; the
    invariant is the reduced Gram of the degree-2 support of the period.
    """
    b = x.phi_b
    if b.type_tag != "B":
        return RigidityReport("NotRigid", reason="phi_B has type A, needs type B")
    support, verdict = _plane_rank_checks(b, "B")
    if verdict is not None:
        return verdict
    sigma = b.coh.deg2
    sigma_support = support_in(K3, sigma)
    if sigma_support.rank != 2:
        return RigidityReport(
            "NotRigid",
            reason=f"degree-2 period support has rank {sigma_support.rank}, needs 2",
        )
    reduced = gauss_reduce2(sigma_support.induced_lattice())
    return RigidityReport(
        "ComplexRigid",
        invariant=reduced.lattice.gram,
        b_rational=_tail_b_rational(b),
        b_canonical=False,
    )


def _tail_b_rational(b: GCYClass) -> bool:
    """Whether some rational degree-2 class B solves deg4 = <B, sigma>.

    Only the projection of B to the period plane acts, so the test solves
    the 2x2 system on the plane and asks for rational coordinates.
    """
    re = tuple(c.re for c in b.coh.deg2)
    im = tuple(c.im for c in b.coh.deg2)
    g11 = pair_real(K3_GRAM, re, re)
    g12 = pair_real(K3_GRAM, re, im)
    g22 = pair_real(K3_GRAM, im, im)
    det = g11 * g22 - g12 * g12
    if det.is_zero:
        return False
    t_re, t_im = b.coh.deg4.re, b.coh.deg4.im
    alpha = (g22 * t_re - g12 * t_im) / det
    beta = (g11 * t_im - g12 * t_re) / det
    coords = tuple(alpha * u + beta * v for u, v in zip(re, im))
    return all(c.is_rational for c in coords)


def is_kahler_rigid(x: GeneralizedK3) -> RigidityReport:
    """Test Kaehler rigidity of a pair and extract the rank-2 invariant.

    Requires phi_A of type A and generalized transcendental rank 22; the
    invariant is the reduced Gram of the support of phi_A.  The theorem
    shape is verified: the extracted B is rational and omega^2 rational.
    """
    a = x.phi_a
    if a.type_tag != "A":
        return RigidityReport("NotRigid", reason="phi_A has type B, needs type A")
    support, verdict = _plane_rank_checks(a, "A")
    if verdict is not None:
        return verdict
    reduced = gauss_reduce2(support.induced_lattice())
    _, bfield, omega = decompose_type_a(a)
    omega_sq = pair_real(K3_GRAM, omega, omega)
    return RigidityReport(
        "KahlerRigid",
        invariant=reduced.lattice.gram,
        b_rational=all(v.is_rational for v in bfield),
        b_canonical=True,
        omega_sq=omega_sq,
    )


DEFAULT_H1 = deg2_vector({0: 1, 1: 1})  # e1 + f1, square 2
DEFAULT_H2 = deg2_vector({2: 1, 3: 1})  # e2 + f2, square 2


@dataclass(frozen=True)
class SurveyConfig:
    max_det: int
    denominator_bound: int
    sqrt_d: tuple[int, ...] = ()
    h1: tuple[int, ...] = DEFAULT_H1
    h2: tuple[int, ...] = DEFAULT_H2

    def __post_init__(self):
        if self.max_det < 1:
            raise ValidationError("max_det must be >= 1")
        if self.denominator_bound < 1:
            raise ValidationError("denominator bound must be >= 1")
        object.__setattr__(self, "sqrt_d", tuple(int(d) for d in self.sqrt_d))
        for h, name in ((self.h1, "h1"), (self.h2, "h2")):
            if len(h) != DEG2_RANK:
                raise ValidationError(f"{name} must have {DEG2_RANK} integer coordinates")
        object.__setattr__(self, "h1", tuple(int(v) for v in self.h1))
        object.__setattr__(self, "h2", tuple(int(v) for v in self.h2))


@dataclass(frozen=True)
class SurveyWitness:
    bfield: tuple[QuadScalar, ...]
    omega: tuple[QuadScalar, ...]


@dataclass(frozen=True)
class SurveyReport:
    config: SurveyConfig
    achieved: tuple[IntMat, ...]
    missing: tuple[IntMat, ...]
    samples: int
    witnesses: tuple[tuple[IntMat, SurveyWitness], ...]  # parallel to achieved


def _survey_kappas(sqrt_d) -> tuple[QuadScalar, ...]:
    kappas = [as_quad(1)]
    for d in sorted(set(sqrt_d)):
        kappas.append(QuadScalar(0, 1, d))
    return tuple(kappas)


def kahler_rigid_survey(config: SurveyConfig) -> SurveyReport:
    """Enumerate exponential classes on the configured positive 2-plane and
    collect the reduced invariant forms they achieve.

    omega = kappa (a H1 + b H2) with kappa in {1} or sqrt(d); B ranges over
    the (p/D) H1 + (q/D) H2 grid with D up to the denominator bound.  Every
    sampled class has rational B and rational omega^2, so each invariant is
    a rank-2 even positive definite reduced form.  Enumeration order is
    fixed, so the report is deterministic; a missing form is a statement
    about this grid only.
    """
    targets = enumerate_reduced_forms(config.max_det)
    target_set = set(targets)
    found: dict[IntMat, SurveyWitness] = {}
    samples = 0
    amax = isqrt(config.max_det)
    kappas = _survey_kappas(config.sqrt_d)
    h1 = tuple(as_quad(v) for v in config.h1)
    h2 = tuple(as_quad(v) for v in config.h2)
    for kappa in kappas:
        for a in range(amax + 1):
            for b in range(amax + 1):
                if a == 0 and b == 0:
                    continue
                omega = tuple(kappa * (a * u + b * v) for u, v in zip(h1, h2))
                if pair_real(K3_GRAM, omega, omega).sign() <= 0:
                    continue
                for denom in range(1, config.denominator_bound + 1):
                    for p in range(denom):
                        for q in range(denom):
                            bfield = tuple(
                                Fraction(p, denom) * u + Fraction(q, denom) * v
                                for u, v in zip(h1, h2)
                            )
                            samples += 1
                            gram = _invariant_of(bfield, omega)
                            if gram in target_set and gram not in found:
                                found[gram] = SurveyWitness(bfield, omega)
    achieved = tuple(g for g in targets if g in found)
    missing = tuple(g for g in targets if g not in found)
    witnesses = tuple((g, found[g]) for g in achieved)
    return SurveyReport(config, achieved, missing, samples, witnesses)


def _invariant_of(bfield, omega) -> IntMat | None:
    cls = check_gcy(exponential_class(bfield, omega))
    support = member_support(cls)
    if support.rank != 2:
        return None
    return gauss_reduce2(support.induced_lattice()).lattice.gram
