import dataclasses

import numpy as np
import pytest
from numpy.testing import assert_allclose

from orbitkit import (
    ClusterAmbiguity,
    ConditioningOverflow,
    HermitianOperator,
    SplitMix64,
    decompose,
    eigh,
    lagrange_projector,
    operator_from_spectrum,
    random_hermitian,
    random_unitary_near_identity,
    reconstruct,
)


def test_decompose_diagonal():
    rho = HermitianOperator(np.diag([0.5, 0.5, 0.25, 0.0]).astype(complex))
    dec = decompose(rho)
    assert dec.eigenvalues == (0.5, 0.25)
    assert dec.multiplicities == (2, 1)
    assert dec.total_rank == 3
    assert_allclose(dec.projections[0].matrix, np.diag([1.0, 1.0, 0.0, 0.0]), atol=1e-12)
    assert_allclose(dec.projections[1].matrix, np.diag([0.0, 0.0, 1.0, 0.0]), atol=1e-12)
    assert_allclose(dec.complement.matrix, np.diag([0.0, 0.0, 0.0, 1.0]), atol=1e-12)


def test_decompose_unitary_invariance():
    rng = SplitMix64(5)
    rho = operator_from_spectrum([(0.8, 2), (-0.4, 1)], 7)
    u = random_unitary_near_identity(rng, 7, 1.3)
    moved = HermitianOperator(u @ rho.matrix @ u.conj().T)
    a, b = decompose(rho), decompose(moved)
    assert a.multiplicities == b.multiplicities
    assert_allclose(a.eigenvalues, b.eigenvalues, atol=1e-12)


def test_decompose_clusters_near_degenerate():
    rho = HermitianOperator(np.diag([1.0, 1.0 + 1e-13, 0.0]).astype(complex))
    dec = decompose(rho, cluster_tol=1e-9)
    assert dec.multiplicities == (2,)
    assert dec.eigenvalues[0] == pytest.approx(1.0 + 5e-14, abs=1e-15)


def test_decompose_block_orthogonality_invariant():
    rng = SplitMix64(21)
    rho = operator_from_spectrum([(1.5, 2), (0.75, 2), (-0.5, 1)])
    u = random_unitary_near_identity(rng, rho.dim, 2.0)
    dec = decompose(HermitianOperator(u @ rho.matrix @ u.conj().T))
    projs = dec.projections + (dec.complement,)
    for i, p in enumerate(projs):
        for j, q in enumerate(projs):
            expected = p.matrix if i == j else np.zeros_like(p.matrix)
            assert np.max(np.abs(p.matrix @ q.matrix - expected)) < 1e-9


def test_decompose_cluster_ambiguity():
    with pytest.raises(ClusterAmbiguity):
        decompose(np.diag([0.5, 0.5 + 5e-8, 0.0]).astype(complex), cluster_tol=1e-8)
    with pytest.raises(ClusterAmbiguity):
        decompose(np.diag([5e-8, 1.0]).astype(complex), cluster_tol=1e-8)


def test_decompose_zero_operator_is_empty():
    dec = decompose(np.zeros((3, 3), dtype=complex))
    assert dec.n == 0 and dec.total_rank == 0
    assert dec.complement.rank == 3


# ------------------------------------------------------------- lagrange

def test_lagrange_hand_quadratic():
    # p(z) = z(z-2)/(1*(-1)) evaluated entrywise on diag(1, 2, 0)
    rho = HermitianOperator(np.diag([1.0, 2.0, 0.0]).astype(complex))
    dec = decompose(rho)
    j_for_one = 1 + dec.eigenvalues.index(1.0)
    p = lagrange_projector(rho, dec, j_for_one)
    assert_allclose(p.matrix, np.diag([1.0, 0.0, 0.0]), atol=1e-12)


def test_lagrange_on_projection_is_itself():
    rho = HermitianOperator(np.diag([1.0, 1.0, 0.0]).astype(complex))
    dec = decompose(rho)
    p = lagrange_projector(rho, dec, 1)
    assert_allclose(p.matrix, rho.matrix, atol=1e-12)


def test_lagrange_kernel_block():
    # p_0(z) = (z - 1)/(0 - 1) = 1 - z
    rho = HermitianOperator(np.diag([1.0, 0.0, 0.0]).astype(complex))
    dec = decompose(rho)
    p = lagrange_projector(rho, dec, 0)
    assert_allclose(p.matrix, np.diag([0.0, 1.0, 1.0]), atol=1e-12)


def test_lagrange_kernel_block_of_full_support_operator():
    # trivial kernel: the j=0 polynomial evaluates to the zero projection
    rho = HermitianOperator(np.diag([1.0, 2.0]).astype(complex))
    dec = decompose(rho)
    assert dec.complement.rank == 0
    p = lagrange_projector(rho, dec, 0)
    assert p.rank == 0
    assert_allclose(p.matrix, np.zeros((2, 2)), atol=1e-12)


def test_lagrange_index_range():
    rho = HermitianOperator(np.diag([1.0, 0.0]).astype(complex))
    dec = decompose(rho)
    with pytest.raises(IndexError):
        lagrange_projector(rho, dec, 2)


def test_lagrange_matches_spectral_route():
    rng = SplitMix64(99)
    for _ in range(20):
        spectrum = [(0.25 + 0.25 * k, rng.randint(1, 2)) for k in range(rng.randint(1, 4))]
        rho = operator_from_spectrum(spectrum)
        u = random_unitary_near_identity(rng, rho.dim, 1.0)
        rho = HermitianOperator(u @ rho.matrix @ u.conj().T)
        dec = decompose(rho)
        for j in range(dec.n + 1):
            ref = dec.complement if j == 0 else dec.projections[j - 1]
            p = lagrange_projector(rho, dec, j)
            assert np.linalg.norm(p.matrix - ref.matrix, 2) <= 1e-8


def test_lagrange_conditioning_overflow():
    rho = HermitianOperator(np.diag([0.5, 0.25]).astype(complex))
    dec = decompose(rho)
    cramped = dataclasses.replace(dec, eigenvalues=(0.5, 0.5 + 1e-13))
    with pytest.raises(ConditioningOverflow):
        lagrange_projector(rho, cramped, 1)


# ----------------------------------------------------------- round trip

def test_reconstruct_roundtrip_diagonal():
    rho = HermitianOperator(np.diag([3.0, 3.0, 1.0]).astype(complex))
    assert_allclose(reconstruct(decompose(rho)).matrix, rho.matrix, atol=1e-12)


def test_reconstruct_identity():
    dec = decompose(np.eye(3, dtype=complex))
    assert_allclose(reconstruct(dec).matrix, np.eye(3), atol=1e-12)


def test_reconstruct_hand_sum():
    rho = HermitianOperator(np.diag([0.5, 0.5, 0.25, 0.0]).astype(complex))
    assert_allclose(reconstruct(decompose(rho)).matrix,
                    np.diag([0.5, 0.5, 0.25, 0.0]), atol=1e-12)


def test_roundtrip_data_random():
    rng = SplitMix64(31)
    for _ in range(10):
        a = random_hermitian(rng, rng.randint(2, 10))
        dec = decompose(a)
        back = reconstruct(dec)
        dec2 = decompose(back)
        assert dec2.multiplicities == dec.multiplicities
        assert_allclose(dec2.eigenvalues, dec.eigenvalues, atol=1e-12)
        for p, q in zip(dec.projections, dec2.projections):
            assert np.linalg.norm(p.matrix - q.matrix, 2) <= 1e-9


def test_projection_continuity_probe():
    rho = operator_from_spectrum([(1.0, 2), (0.5, 1)])
    dec = decompose(rho)
    rng = SplitMix64(77)
    direction = random_hermitian(rng, rho.dim)
    w, v = eigh(direction)
    top = float(np.max(np.abs(w)))
    devs = []
    for eps in (1e-2, 1e-3, 1e-4):
        u = (v * np.exp(1j * eps * w / top)) @ v.conj().T
        dec_eps = decompose(HermitianOperator(u @ rho.matrix @ u.conj().T))
        devs.append(
            max(
                np.linalg.norm(a.matrix - b.matrix, 2)
                for a, b in zip(
                    dec.projections + (dec.complement,),
                    dec_eps.projections + (dec_eps.complement,),
                )
            )
        )
    assert all(np.isfinite(devs))
    assert devs[0] > devs[1] > devs[2]
    # empirical continuity modulus stays bounded along the sequence
    assert max(d / e for d, e in zip(devs, (1e-2, 1e-3, 1e-4))) < 50.0
