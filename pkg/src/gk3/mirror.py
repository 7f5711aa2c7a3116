"""Lattice polarizations, mirror pairs, and the two standard constructions.

A polarization is a pair of primitively embedded sublattices (K, L) of
the Mukai lattice together with witnesses: a type A generalized
Calabi-Yau class inside the complex span of K and a type B class inside
the span of L.  Two polarized families are mirror partners when the K of
one matches the L of the other at invariant level and the moduli
dimensions (rank K - 2, rank L - 2) swap.

Two builders are provided.  The classical construction takes a
hyperbolic summand off the complement of a degree-2 polarization and
fails exactly when the complement is definite, which happens for the
rank-20 attractive surfaces.  The second construction sidesteps that
obstruction by pairing the rank-22 complement of a degree-2 period with
the rank-2 support of a pure Kaehler class, giving a mirror family for
every n at moduli dimensions (20, 0) and (0, 20).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .intlinalg import (
    IntMat,
    det,
    hnf_basis,
    in_q_span,
    in_row_lattice,
    matmul,
    q_rank,
    transpose,
)
from .lattices import (
    IntegralLattice,
    MatchResult,
    Sublattice,
    SplitNotFound,
    direct_sum,
    find_hyperbolic_split,
    gauss_reduce2,
    hyperbolic_plane,
    invariants_match,
    is_primitive,
    k3_lattice,
    ortho_complement,
)
from .mukai import (
    GenericClass,
    MUKAI_GRAM,
    Member,
    check_gcy,
    deg2_vector,
    exponential_class,
    member_support,
    member_type,
    support_lattice,
    two_form_class,
)
from .pairs import GeneralizedK3, neron_severi, transcendental, validate_gk3


@dataclass(frozen=True)
class PolarizationData:
    """Embedded (K, L) with witnesses; slot K hosts type A, slot L type B."""

    k_emb: Sublattice
    l_emb: Sublattice
    witness_a: Member
    witness_b: Member


@dataclass(frozen=True)
class Clause:
    name: str
    ok: bool
    detail: str | None = None


@dataclass(frozen=True)
class PolarizationReport:
    """Per-clause verdicts plus the data the definition leaves to the reader.

    The joint index is the index of K + L inside its saturation when the
    two spans are independent and fill the ambient; the K-L pairing matrix
    is reported because mutual orthogonality is not part of the definition.
    """

    clauses: tuple[Clause, ...]
    joint_index: int | None
    kl_pairing: IntMat

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.clauses)

    def failed_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.clauses if not c.ok)


def _span_contains(outer: Sublattice, inner: Sublattice) -> bool:
    return all(in_q_span(outer.basis, row) for row in inner.basis)


def _sublattice_contains(outer: Sublattice, inner: Sublattice) -> bool:
    if not inner.basis:
        return True
    outer_h = hnf_basis(outer.basis, outer.ambient.rank) if outer.basis else ()
    return all(in_row_lattice(outer_h, row) for row in inner.basis)


def check_polarization(p: PolarizationData, x: GeneralizedK3) -> PolarizationReport:
    """Verify the polarization conditions of (K, L) against a member pair.

    Checked by name: slot signatures (2, rank-2) summing to rank 24,
    primitivity of each embedding, independence of the two spans, witness
    types and span memberships, and the containments K inside the
    Neron-Severi lattice and L inside the transcendental lattice of the
    member.  The joint saturation index and the K-L pairing matrix are
    attached rather than judged.
    """
    clauses: list[Clause] = []
    sig_k = p.k_emb.induced_lattice().signature()
    sig_l = p.l_emb.induced_lattice().signature()
    clauses.append(
        Clause(
            "K signature (2, rank-2)",
            sig_k.n_plus == 2 and sig_k.n_zero == 0,
            f"got {sig_k.as_tuple()}",
        )
    )
    clauses.append(
        Clause(
            "L signature (2, rank-2)",
            sig_l.n_plus == 2 and sig_l.n_zero == 0,
            f"got {sig_l.as_tuple()}",
        )
    )
    rank_sum = p.k_emb.rank + p.l_emb.rank
    clauses.append(Clause("ranks sum to 24", rank_sum == 24, f"got {rank_sum}"))
    clauses.append(Clause("K embedding primitive", is_primitive(p.k_emb)))
    clauses.append(Clause("L embedding primitive", is_primitive(p.l_emb)))
    stack = p.k_emb.basis + p.l_emb.basis
    independent = q_rank(stack) == len(stack)
    clauses.append(Clause("K and L spans independent", independent))
    clauses.append(
        Clause(
            "witness A has type A",
            member_type(p.witness_a) == "A",
            f"got {member_type(p.witness_a)}",
        )
    )
    clauses.append(
        Clause(
            "witness A lies in the K span",
            _span_contains(p.k_emb, member_support(p.witness_a)),
        )
    )
    clauses.append(
        Clause(
            "witness B has type B",
            member_type(p.witness_b) == "B",
            f"got {member_type(p.witness_b)}",
        )
    )
    clauses.append(
        Clause(
            "witness B lies in the L span",
            _span_contains(p.l_emb, member_support(p.witness_b)),
        )
    )
    ns = neron_severi(x)
    t = transcendental(x)
    clauses.append(
        Clause("K inside the Neron-Severi lattice", _sublattice_contains(ns, p.k_emb))
    )
    clauses.append(
        Clause("L inside the transcendental lattice", _sublattice_contains(t, p.l_emb))
    )
    joint_index = abs(det(stack)) if (independent and rank_sum == 24) else None
    kl = matmul(matmul(p.k_emb.basis, MUKAI_GRAM), transpose(p.l_emb.basis))
    return PolarizationReport(tuple(clauses), joint_index, kl)


def moduli_dims(p: PolarizationData) -> tuple[int, int]:
    """(rank K - 2, rank L - 2): the dimensions of the two moduli factors."""
    return p.k_emb.rank - 2, p.l_emb.rank - 2


@dataclass(frozen=True)
class FamilySpec:
    """A polarization with a designated member pair."""

    polarization: PolarizationData
    member: GeneralizedK3

    def check(self) -> PolarizationReport:
        return check_polarization(self.polarization, self.member)


@dataclass(frozen=True)
class MirrorReport:
    """Verdicts for a candidate mirror pair of polarized families."""

    k1_vs_l2: MatchResult
    l1_vs_k2: MatchResult
    dims_1: tuple[int, int]
    dims_2: tuple[int, int]
    dims_swap: bool
    ns1_vs_t2: MatchResult
    t1_vs_ns2: MatchResult
    polarization_1_passed: bool
    polarization_2_passed: bool

    @property
    def verified(self) -> bool:
        return (
            self.k1_vs_l2.matched
            and self.l1_vs_k2.matched
            and self.dims_swap
            and self.ns1_vs_t2.matched
            and self.t1_vs_ns2.matched
            and self.polarization_1_passed
            and self.polarization_2_passed
        )


def mirror_check(f1: FamilySpec, f2: FamilySpec) -> MirrorReport:
    """Compare two families as candidate mirror partners.

    The K of each family is compared with the L of the other at invariant
    level (exact reduced-form equality in the rank-2 definite case), the
    moduli dimensions must swap, and the Neron-Severi/transcendental
    lattices of the designated members are cross-compared the same way.
    """
    p1, p2 = f1.polarization, f2.polarization
    k1 = p1.k_emb.induced_lattice()
    l1 = p1.l_emb.induced_lattice()
    k2 = p2.k_emb.induced_lattice()
    l2 = p2.l_emb.induced_lattice()
    dims_1, dims_2 = moduli_dims(p1), moduli_dims(p2)
    ns1 = neron_severi(f1.member).induced_lattice()
    t1 = transcendental(f1.member).induced_lattice()
    ns2 = neron_severi(f2.member).induced_lattice()
    t2 = transcendental(f2.member).induced_lattice()
    return MirrorReport(
        k1_vs_l2=invariants_match(k1, l2),
        l1_vs_k2=invariants_match(l1, k2),
        dims_1=dims_1,
        dims_2=dims_2,
        dims_swap=dims_1 == (dims_2[1], dims_2[0]),
        ns1_vs_t2=invariants_match(ns1, t2),
        t1_vs_ns2=invariants_match(t1, ns2),
        polarization_1_passed=f1.check().passed,
        polarization_2_passed=f2.check().passed,
    )


@dataclass(frozen=True)
class Failure:
    reason: str


@dataclass(frozen=True)
class DolgachevMirror:
    """The mirror lattice N with its split witness and the duality check."""

    n: IntegralLattice
    n_basis: IntMat  # rows in ambient K3 coordinates
    e: tuple[int, ...]
    f: tuple[int, ...]
    duality: MatchResult


def dolgachev_mirror(kp: Sublattice, radius: int = 3) -> DolgachevMirror | Failure:
    """Classical mirror of a degree-2 polarization: split U off its complement.

    kp must be a primitive sublattice of the K3 lattice with signature
    (1, t).  The search for the hyperbolic summand is bounded; a definite
    complement (the rank-20 attractive case) is a hard obstruction, while
    exhausting the radius only means no split was found at this bound.
    On success the duality invariant check compares kp + U with the
    complement of the embedded mirror lattice.
    """
    k3 = k3_lattice()
    if kp.ambient.gram != k3.gram:
        raise ValidationError("mirror construction lives in the K3 lattice")
    if not is_primitive(kp):
        raise ValidationError("polarization sublattice must be primitive")
    sig = kp.induced_lattice().signature()
    if sig.n_plus != 1 or sig.n_zero != 0:
        raise ValidationError(
            f"polarization must have signature (1, t), got {sig.as_tuple()}"
        )
    perp = ortho_complement(kp)
    perp_lattice = perp.induced_lattice()
    if perp_lattice.is_definite:
        return Failure("definite complement")
    split = find_hyperbolic_split(perp_lattice, radius=radius)
    if isinstance(split, SplitNotFound):
        return Failure(split.reason)
    n_basis = matmul(split.complement_basis, perp.basis)
    n_amb = Sublattice(k3, n_basis)
    dual_side = ortho_complement(n_amb).induced_lattice()
    expected = direct_sum(kp.induced_lattice(), hyperbolic_plane())
    e_amb = tuple(matvec_row(split.e, perp.basis))
    f_amb = tuple(matvec_row(split.f, perp.basis))
    return DolgachevMirror(
        n=split.complement,
        n_basis=n_basis,
        e=e_amb,
        f=f_amb,
        duality=invariants_match(expected, dual_side),
    )


def matvec_row(coeffs, rows) -> tuple[int, ...]:
    """Integer combination sum(c_i * rows_i) of basis rows."""
    if not rows:
        return ()
    out = [0] * len(rows[0])
    for c, row in zip(coeffs, rows):
        if not c:
            continue
        for j, v in enumerate(row):
            out[j] += c * v
    return tuple(out)


def build_si_mirror(n: int) -> tuple[FamilySpec, FamilySpec]:
    """The mirror pair that works where the classical construction fails.

    For the degree-2 period sigma = (e2 + n f2) + i (e3 + n f3) the
    complement of its support is the rank-22 slot K; its partner slot L is
    the rank-2 support of sigma with Gram diag(2n, 2n).  The dual family
    polarizes by the support of exp(i H) with H = e1 + n f1 and its
    rank-22 complement.  Witnesses are exp(i H) (type A) and sigma
    (type B) for both families; members are generic on the rank-22 slots.
    The moduli dimensions are (20, 0) and (0, 20).
    """
    n = int(n)
    if n < 1:
        raise ValidationError("n must be a positive integer")
    h = deg2_vector({0: 1, 1: n})
    sigma = check_gcy(
        two_form_class(deg2_vector({2: 1, 3: n}), deg2_vector({4: 1, 5: n}))
    )
    exp_h = check_gcy(exponential_class([0] * 22, h))
    l_sigma = support_lattice(sigma)
    ns_prime = ortho_complement(l_sigma)
    l_exp = support_lattice(exp_h)
    k_dual = ortho_complement(l_exp)
    fam1 = FamilySpec(
        PolarizationData(ns_prime, l_sigma, exp_h, sigma),
        validate_gk3(GenericClass(ns_prime, "A"), sigma),
    )
    fam2 = FamilySpec(
        PolarizationData(l_exp, k_dual, exp_h, sigma),
        validate_gk3(exp_h, GenericClass(k_dual, "B")),
    )
    _assert_si_shape(fam1, fam2, n)
    return fam1, fam2


def _assert_si_shape(fam1: FamilySpec, fam2: FamilySpec, n: int) -> None:
    """Internal consistency of the builder output, checked exactly."""
    expected_l = ((2 * n, 0), (0, 2 * n))
    t1 = transcendental(fam1.member)
    if gauss_reduce2(t1.induced_lattice()).lattice.gram != expected_l:
        raise ValidationError("transcendental lattice of X is not diag(2n, 2n)")
    ns2 = neron_severi(fam2.member)
    if gauss_reduce2(ns2.induced_lattice()).lattice.gram != expected_l:
        raise ValidationError("Neron-Severi lattice of the mirror is not diag(2n, 2n)")
    ns1 = neron_severi(fam1.member).induced_lattice()
    t2 = transcendental(fam2.member).induced_lattice()
    if ns1.rank != 22 or t2.rank != 22:
        raise ValidationError("rank-22 slots have the wrong rank")
    if not invariants_match(ns1, t2).matched:
        raise ValidationError("rank-22 slots disagree at invariant level")
    for fam in (fam1, fam2):
        report = fam.check()
        if not report.passed:
            raise ValidationError(
                f"polarization clauses failed: {report.failed_names()}"
            )
