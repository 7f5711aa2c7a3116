"""Generalized K3 surfaces: pairs of generalized Calabi-Yau classes.

A pair (phi_A, phi_B) is a generalized K3 surface when the period planes
of the two classes are pointwise orthogonal (four vanishing cross
pairings, stronger than <phi_A, phi_B> = 0) and the two norms
<phi, conj phi> agree.  The four real vectors then span a positive
definite 4-space Pi.

From a pair the module computes the generalized Neron-Severi lattice
(the orthogonal complement of the support of phi_B), the generalized
transcendental lattice (the complement of the support of phi_A), their
signature profile, and the classification of which hyperKaehler-partner
case the pair realizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .intlinalg import int_kernel, matmul
from .lattices import IntegralLattice, Sublattice, ortho_complement
from .mukai import (
    MUKAI,
    GCYClass,
    GenericClass,
    K3_GRAM,
    Member,
    CohClass,
    bfield_matrix,
    bfield_transform,
    check_gcy,
    decompose_type_a,
    member_support,
    mukai_pairing_real,
    pair_real,
)
from .scalars import QuadScalar


def _coerce_member(x) -> Member:
    if isinstance(x, (GCYClass, GenericClass)):
        return x
    if isinstance(x, CohClass):
        return check_gcy(x)
    raise ValidationError(f"not a generalized Calabi-Yau class: {x!r}")


@dataclass(frozen=True)
class PiSpace:
    """The positive 4-space spanned by Re/Im of both classes, with Gram."""

    vectors: tuple[tuple[QuadScalar, ...], ...]  # Re A, Im A, Re B, Im B
    gram: tuple[tuple[QuadScalar, ...], ...]


@dataclass(frozen=True)
class GeneralizedK3:
    """A validated pair; phi_A is a hyperKaehler partner of phi_B."""

    phi_a: Member
    phi_b: Member
    status: str  # "Verified" | "FormalGeneric"
    pi: PiSpace | None


_CROSS_NAMES = (
    ("Re phiA", "Re phiB"),
    ("Re phiA", "Im phiB"),
    ("Im phiA", "Re phiB"),
    ("Im phiA", "Im phiB"),
)


def cross_pairings(a: GCYClass, b: GCYClass) -> tuple[QuadScalar, ...]:
    """The four pairings between Re/Im of phi_A and Re/Im of phi_B."""
    ra, ia = a.coh.real_vector(), a.coh.imag_vector()
    rb, ib = b.coh.real_vector(), b.coh.imag_vector()
    return (
        mukai_pairing_real(ra, rb),
        mukai_pairing_real(ra, ib),
        mukai_pairing_real(ia, rb),
        mukai_pairing_real(ia, ib),
    )


def _pi_space(a: GCYClass, b: GCYClass) -> PiSpace:
    vectors = (
        a.coh.real_vector(),
        a.coh.imag_vector(),
        b.coh.real_vector(),
        b.coh.imag_vector(),
    )
    gram = tuple(
        tuple(mukai_pairing_real(u, v) for v in vectors) for u in vectors
    )
    return PiSpace(vectors, gram)


def _is_positive_definite_quad(gram) -> bool:
    """Sylvester criterion with exact QuadScalar leading minors."""
    n = len(gram)
    for k in range(1, n + 1):
        sub = [row[:k] for row in gram[:k]]
        if _quad_det(sub).sign() <= 0:
            return False
    return True


def _quad_det(m) -> QuadScalar:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = QuadScalar(0)
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        acc = acc + sign * m[0][j] * _quad_det(minor)
        sign = -sign
    return acc


def validate_gk3(phi_a, phi_b) -> GeneralizedK3:
    """Validate a pair of classes as a generalized K3 surface.

    Explicit/explicit pairs are checked exactly: the four cross pairings
    must vanish and the norms must agree; the 4x4 Gram of Pi is built and
    must be positive definite.  A pair with a generic member only gets
    support-level checks and is marked FormalGeneric.
    """
    a = _coerce_member(phi_a)
    b = _coerce_member(phi_b)
    if isinstance(a, GenericClass) or isinstance(b, GenericClass):
        return GeneralizedK3(a, b, "FormalGeneric", None)
    crosses = cross_pairings(a, b)
    for (name_u, name_v), value in zip(_CROSS_NAMES, crosses):
        if not value.is_zero:
            raise ValidationError(
                f"planes not orthogonal: <{name_u}, {name_v}> = {value}"
            )
    if a.norm != b.norm:
        raise ValidationError(f"norm mismatch: {a.norm} vs {b.norm}")
    pi = _pi_space(a, b)
    if not _is_positive_definite_quad(pi.gram):
        raise ValidationError("positive 4-space is degenerate")
    return GeneralizedK3(a, b, "Verified", pi)


def neron_severi(x: GeneralizedK3) -> Sublattice:
    """Orthogonal complement of the support of phi_B (HNF-normalized)."""
    return ortho_complement(member_support(x.phi_b))


def transcendental(x: GeneralizedK3) -> Sublattice:
    """Orthogonal complement of the support of phi_A (HNF-normalized)."""
    return ortho_complement(member_support(x.phi_a))


def ns_and_transcendental(x: GeneralizedK3) -> tuple[Sublattice, Sublattice]:
    return neron_severi(x), transcendental(x)


@dataclass(frozen=True)
class SignatureProfile:
    ns_signature: tuple[int, int, int]
    t_signature: tuple[int, int, int]
    intersection_rank: int
    intersection_signature: tuple[int, int, int]


def signature_profile(x: GeneralizedK3) -> SignatureProfile:
    """Signatures of the Neron-Severi and transcendental lattices and of
    their intersection.  Each side has at most 2 positive directions,
    since the complement of a lattice containing a positive 2-plane sits
    in signature (4, 20)."""
    ns, t = ns_and_transcendental(x)
    sig_ns = ns.induced_lattice().signature()
    sig_t = t.induced_lattice().signature()
    for label, sig in (("NS", sig_ns), ("T", sig_t)):
        if sig.n_plus > 2:
            raise ValidationError(
                f"{label} lattice has {sig.n_plus} positive directions, expected <= 2"
            )
    conditions = matmul(member_support(x.phi_b).basis, MUKAI.gram) + matmul(
        member_support(x.phi_a).basis, MUKAI.gram
    )
    inter = Sublattice(MUKAI, int_kernel(conditions, MUKAI.rank))
    sig_i = inter.induced_lattice().signature()
    return SignatureProfile(
        sig_ns.as_tuple(), sig_t.as_tuple(), inter.rank, sig_i.as_tuple()
    )


@dataclass(frozen=True)
class Identity:
    """One checked cohomological identity with its exact residual value."""

    name: str
    holds: bool
    value: QuadScalar


@dataclass(frozen=True)
class HKClassification:
    """Which hyperKaehler-partner case a pair of explicit classes realizes.

    The case label is '<type of phi_B>-with-<type of phi_A>'.  For an
    A-with-A pair the B-field identities are checked with the relative
    B-field of the partner against the base, which is the invariant form
    of the usual normalization that removes the base B-field.
    """

    case: str
    orthogonal: bool
    norms_match: bool
    identities: tuple[Identity, ...]


def classify_hk_pair(x, phi_b=None) -> HKClassification:
    """Classify an explicit pair by the types of its members.

    Accepts a GeneralizedK3 or two explicit classes; generic members
    cannot be classified.
    """
    if phi_b is None:
        if not isinstance(x, GeneralizedK3):
            raise ValidationError("classification needs a pair or two classes")
        phi_a, phi_b = x.phi_a, x.phi_b
    else:
        phi_a = x
    a = _coerce_member(phi_a)
    b = _coerce_member(phi_b)
    if isinstance(a, GenericClass) or isinstance(b, GenericClass):
        raise ValidationError("classification needs explicit classes")
    case = f"{b.type_tag}-with-{a.type_tag}"
    crosses = cross_pairings(a, b)
    orthogonal = all(v.is_zero for v in crosses)
    norms_match = a.norm == b.norm
    identities: list[Identity] = []
    if case == "A-with-A":
        _, b_base, w_base = decompose_type_a(b)
        _, b_part, w_part = decompose_type_a(a)
        b_rel = tuple(u - v for u, v in zip(b_part, b_base))
        w_w = pair_real(K3_GRAM, w_base, w_part)
        w_brel = pair_real(K3_GRAM, w_base, b_rel)
        wp_brel = pair_real(K3_GRAM, w_part, b_rel)
        residual = (
            pair_real(K3_GRAM, b_rel, b_rel)
            - pair_real(K3_GRAM, w_base, w_base)
            - pair_real(K3_GRAM, w_part, w_part)
        )
        identities.append(Identity("omega wedge omega'", w_w.is_zero, w_w))
        identities.append(Identity("omega wedge B_rel", w_brel.is_zero, w_brel))
        identities.append(Identity("omega' wedge B_rel", wp_brel.is_zero, wp_brel))
        identities.append(
            Identity("B_rel^2 - omega^2 - omega'^2", residual.is_zero, residual)
        )
        norm_gap = a.norm - b.norm
        identities.append(
            Identity("|lambda|^2 omega^2 matches", norm_gap.is_zero, norm_gap)
        )
    return HKClassification(case, orthogonal, norms_match, tuple(identities))


def transform_pair(b_int, x: GeneralizedK3) -> GeneralizedK3:
    """Apply an integral B-field transform to both members of a pair.

    Explicit members transform as classes; a generic member transforms by
    mapping its support through the (unimodular) matrix of exp(B).
    """
    m = bfield_matrix(b_int)

    def move(member: Member) -> Member:
        if isinstance(member, GenericClass):
            new_basis = matmul(member.support.basis, m)
            return GenericClass(Sublattice(MUKAI, new_basis), member.type_tag)
        return check_gcy(bfield_transform([int(v) for v in b_int], member.coh))

    return validate_gk3(move(x.phi_a), move(x.phi_b))
