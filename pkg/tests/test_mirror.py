from __future__ import annotations

import pytest

from gk3.errors import ValidationError
from gk3.intlinalg import matmul, transpose
from gk3.lattices import (
    Sublattice,
    diag_lattice,
    direct_sum,
    discriminant,
    e8_minus,
    gauss_reduce2,
    hyperbolic_plane,
    invariants_match,
    k3_lattice,
    ortho_complement,
)
from gk3.mirror import (
    Failure,
    DolgachevMirror,
    FamilySpec,
    PolarizationData,
    build_si_mirror,
    check_polarization,
    dolgachev_mirror,
    mirror_check,
    moduli_dims,
)
from gk3.pairs import neron_severi, transcendental

EXPECTED_CLAUSES = (
    "K signature (2, rank-2)",
    "L signature (2, rank-2)",
    "ranks sum to 24",
    "K embedding primitive",
    "L embedding primitive",
    "K and L spans independent",
    "witness A has type A",
    "witness A lies in the K span",
    "witness B has type B",
    "witness B lies in the L span",
    "K inside the Neron-Severi lattice",
    "L inside the transcendental lattice",
)


def test_polarization_clause_names_and_pass():
    fam_x, _ = build_si_mirror(1)
    report = fam_x.check()
    assert tuple(c.name for c in report.clauses) == EXPECTED_CLAUSES
    assert report.passed
    assert report.failed_names() == ()
    assert report.joint_index == 4
    assert all(all(v == 0 for v in row) for row in report.kl_pairing)


def test_polarization_detects_swapped_witnesses():
    fam_x, _ = build_si_mirror(1)
    p = fam_x.polarization
    swapped = PolarizationData(p.k_emb, p.l_emb, p.witness_b, p.witness_a)
    report = check_polarization(swapped, fam_x.member)
    assert not report.passed
    failed = set(report.failed_names())
    assert "witness A has type A" in failed
    assert "witness B has type B" in failed


def test_polarization_detects_imprimitive_embedding():
    fam_x, _ = build_si_mirror(1)
    p = fam_x.polarization
    doubled = Sublattice(p.l_emb.ambient, tuple(tuple(2 * v for v in row) for row in p.l_emb.basis))
    report = check_polarization(
        PolarizationData(p.k_emb, doubled, p.witness_a, p.witness_b), fam_x.member
    )
    assert "L embedding primitive" in report.failed_names()


def test_polarization_detects_overlapping_spans():
    fam_x, _ = build_si_mirror(1)
    p = fam_x.polarization
    overlapping = PolarizationData(p.k_emb, p.k_emb, p.witness_a, p.witness_b)
    report = check_polarization(overlapping, fam_x.member)
    failed = set(report.failed_names())
    assert "K and L spans independent" in failed
    assert report.joint_index is None


def test_moduli_dimensions():
    fam_x, fam_dual = build_si_mirror(1)
    assert moduli_dims(fam_x.polarization) == (20, 0)
    assert moduli_dims(fam_dual.polarization) == (0, 20)


def test_si_mirror_shape_per_degree():
    for n in (1, 2, 3):
        fam_x, fam_dual = build_si_mirror(n)
        ns = neron_severi(fam_x.member).induced_lattice()
        assert ns.rank == 22
        assert ns.signature().as_tuple() == (2, 20, 0)
        assert discriminant(ns) == (2 * n, 2 * n)
        t = transcendental(fam_x.member).induced_lattice()
        assert gauss_reduce2(t).lattice.gram == ((2 * n, 0), (0, 2 * n))
        # the dual family swaps the two lattices at invariant level
        ns_dual = neron_severi(fam_dual.member).induced_lattice()
        assert gauss_reduce2(ns_dual).lattice.gram == ((2 * n, 0), (0, 2 * n))
        t_dual = transcendental(fam_dual.member).induced_lattice()
        assert invariants_match(ns, t_dual).matched


def test_si_mirror_check_passes():
    fam_x, fam_dual = build_si_mirror(2)
    report = mirror_check(fam_x, fam_dual)
    assert report.verified
    assert report.dims_1 == (20, 0)
    assert report.dims_2 == (0, 20)
    assert report.dims_swap
    assert report.l1_vs_k2.verdict == "Equal2"
    assert report.k1_vs_l2.verdict == "GenusInvariantsMatch"


def test_mirror_check_distinguishes_wrong_partner():
    fam_x, _ = build_si_mirror(1)
    _, wrong_dual = build_si_mirror(2)
    report = mirror_check(fam_x, wrong_dual)
    assert not report.verified
    assert report.l1_vs_k2.verdict == "Distinguished"


def test_si_mirror_rejects_bad_degree():
    with pytest.raises(ValidationError):
        build_si_mirror(0)


def test_dolgachev_mirror_of_degree_2n():
    k3 = k3_lattice()
    for n in (1, 2, 3):
        kp = Sublattice(k3, ((1, n) + (0,) * 20,))
        out = dolgachev_mirror(kp)
        assert isinstance(out, DolgachevMirror)
        assert out.duality.matched
        expected = direct_sum(
            diag_lattice((-2 * n,)), hyperbolic_plane(), e8_minus(), e8_minus()
        )
        assert invariants_match(out.n, expected).matched
        # the extracted pair really is a hyperbolic plane inside the K3 lattice
        pair = matmul(matmul((out.e, out.f), k3.gram), transpose((out.e, out.f)))
        assert pair == ((0, 1), (1, 0))
        cross = matmul(matmul(out.n_basis, k3.gram), transpose((out.e, out.f)))
        assert all(all(v == 0 for v in row) for row in cross)


def test_dolgachev_definite_complement_is_a_hard_failure():
    k3 = k3_lattice()
    m = Sublattice(k3, ((1, 1) + (0,) * 20, (0, 0, 1, 1) + (0,) * 18))
    kp = ortho_complement(m)  # rank 20, signature (1, 19)
    assert kp.induced_lattice().signature().as_tuple() == (1, 19, 0)
    out = dolgachev_mirror(kp)
    assert isinstance(out, Failure)
    assert out.reason == "definite complement"


def test_dolgachev_input_validation():
    k3 = k3_lattice()
    with pytest.raises(ValidationError, match="K3 lattice"):
        dolgachev_mirror(Sublattice(hyperbolic_plane(), ((1, 1),)))
    with pytest.raises(ValidationError, match="primitive"):
        dolgachev_mirror(Sublattice(k3, ((2, 2) + (0,) * 20,)))
    with pytest.raises(ValidationError, match=r"signature \(1, t\)"):
        dolgachev_mirror(Sublattice(k3, ((1, -1) + (0,) * 20,)))  # square -2


def test_family_check_shortcut():
    fam_x, _ = build_si_mirror(1)
    assert isinstance(fam_x, FamilySpec)
    assert fam_x.check().passed
