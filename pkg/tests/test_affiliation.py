import numpy as np
import pytest
from numpy.testing import assert_allclose

from orbitkit import (
    KernelHit,
    OrthProjection,
    RankMismatch,
    SplitMix64,
    affiliate,
    example_pair_generator,
    proximity_check,
    split,
)
from conftest import angled_pair, rank1


# ------------------------------------------------------------------ split

def test_split_equal_pair_all_trivial():
    e = OrthProjection(np.diag([1.0, 1.0, 0.0]).astype(complex))
    parts = split(e, e)
    assert parts.q.rank == 2
    assert parts.n_prime == 0
    for p in (parts.e_prime, parts.f_prime, parts.e_perp, parts.f_perp):
        assert p.rank == 0


def test_split_transverse_rank1():
    e, f = angled_pair(np.pi / 4, dim=3)
    parts = split(e, f)
    assert parts.q.rank == 0
    assert parts.n_prime == 1
    assert_allclose(parts.e_prime.matrix, e.matrix, atol=1e-12)
    assert_allclose(parts.f_prime.matrix, f.matrix, atol=1e-12)


def test_split_commuting_case_then_kernel_hit():
    e = OrthProjection(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))
    f = OrthProjection(np.diag([1.0, 0.0, 1.0, 0.0]).astype(complex))
    parts = split(e, f)
    assert_allclose(parts.q.matrix, np.diag([1.0, 0.0, 0.0, 0.0]), atol=1e-12)
    assert_allclose(parts.e_prime.matrix, np.diag([0.0, 1.0, 0.0, 0.0]), atol=1e-12)
    assert_allclose(parts.f_prime.matrix, np.diag([0.0, 0.0, 1.0, 0.0]), atol=1e-12)
    # the primes are orthogonal: E'F'E' = 0, the degenerate situation
    with pytest.raises(KernelHit):
        affiliate(parts.e_prime, parts.f_prime)


def test_split_rank_mismatch():
    e = OrthProjection(np.diag([1.0, 0.0]).astype(complex))
    f = OrthProjection(np.diag([1.0, 1.0]).astype(complex))
    with pytest.raises(RankMismatch):
        split(e, f)


def test_split_hs_distance_identities():
    rng = SplitMix64(4)
    e, f, _ = example_pair_generator(7, [0.9, 0.6, 0.4])
    parts = split(e, f)

    def hs_sq(a, b):
        d = a.matrix - b.matrix
        return float(np.trace(d @ d).real)

    base = hs_sq(e, f)
    assert hs_sq(parts.e_prime, parts.f_prime) == pytest.approx(base, abs=1e-9)
    assert hs_sq(parts.e_perp, parts.f_perp) == pytest.approx(base, abs=1e-9)


# -------------------------------------------------------------- affiliate

def test_affiliate_rank1_closed_form():
    # e = (1,0), f = (cos pi/3, sin pi/3): alpha = 1/2, beta = sqrt(3)/2
    e, f = angled_pair(np.pi / 3)
    bases = affiliate(e, f)
    assert_allclose(bases.e[:, 0], [1.0, 0.0], atol=1e-14)
    assert_allclose(bases.f[:, 0], [0.5, np.sqrt(3) / 2], atol=1e-14)
    assert_allclose(bases.e_perp[:, 0], [0.0, 1.0], atol=1e-14)
    assert bases.alpha[0] == pytest.approx(0.5, abs=1e-14)
    assert bases.beta[0] == pytest.approx(np.sqrt(3) / 2, abs=1e-14)


def test_affiliate_example_pair_spectrum():
    # EFE eigenvalues are the squared overlap magnitudes {3/4, 1/2}
    e, f, _ = example_pair_generator(4, [np.cos(np.pi / 6), np.cos(np.pi / 4)])
    bases = affiliate(e, f)
    efe = e.matrix @ f.matrix @ e.matrix
    mu = np.sort(np.linalg.eigvalsh(efe))[::-1][:2]
    assert_allclose(mu, [0.75, 0.5], atol=1e-12)
    assert_allclose(bases.overlaps, [np.sqrt(3) / 2, np.sqrt(2) / 2], atol=1e-12)


def test_affiliate_orthogonal_pair_kernel_hit():
    e = rank1([1.0, 0.0])
    f = rank1([0.0, 1.0])
    with pytest.raises(KernelHit):
        affiliate(e, f)


def test_affiliate_rank_mismatch():
    e = OrthProjection(np.diag([1.0, 0.0, 0.0]).astype(complex))
    f = OrthProjection(np.diag([1.0, 1.0, 0.0]).astype(complex))
    with pytest.raises(RankMismatch):
        affiliate(e, f)


def test_affiliate_rejects_nontrivial_intersection():
    # shared direction e0 plus a transverse block: EFE spectrum {1, cos^2}
    theta = 0.4
    b_prime = np.array([0.0, np.cos(theta), np.sin(theta)], dtype=complex)
    e = OrthProjection(np.diag([1.0, 1.0, 0.0]).astype(complex))
    f = OrthProjection(np.diag([1.0, 0.0, 0.0]).astype(complex) + np.outer(b_prime, b_prime.conj()))
    with pytest.raises(ValueError, match="split"):
        affiliate(e, f)


def _assert_affiliated_invariants(f_proj, bases, ortho_tol=1e-10):
    n = bases.size
    gram_e = bases.e.conj().T @ bases.e
    gram_f = bases.f.conj().T @ bases.f
    gram_p = bases.e_perp.conj().T @ bases.e_perp
    for gram in (gram_e, gram_f, gram_p):
        assert np.max(np.abs(gram - np.eye(n))) <= ortho_tol
    cross = bases.f.conj().T @ bases.e
    off = cross - np.diag(np.diagonal(cross))
    assert np.max(np.abs(off)) <= ortho_tol
    diag = np.diagonal(cross)
    assert np.all(diag.real > 0) and np.max(np.abs(diag.imag)) <= ortho_tol
    recon = bases.e * bases.alpha + bases.e_perp * bases.beta
    assert np.max(np.abs(recon - bases.f)) <= 1e-10
    assert np.max(np.abs(bases.alpha**2 + bases.beta**2 - 1.0)) <= 1e-10
    assert np.all(bases.alpha * bases.beta != 0.0)
    resum = bases.f @ bases.f.conj().T
    assert np.linalg.norm(resum - f_proj.matrix, 2) <= 1e-9


def test_affiliate_invariants_random_pairs():
    rng = SplitMix64(2025)
    for _ in range(40):
        n = rng.randint(1, 4)
        alphas = [np.cos(rng.uniform_in(0.05, 1.3)) for _ in range(n)]
        if rng.uniform() < 0.5:  # complex overlap phases
            alphas = [a * np.exp(2j * np.pi * rng.uniform()) for a in alphas]
        e, f, _ = example_pair_generator(2 * n + rng.randint(0, 3), alphas)
        bases = affiliate(e, f)
        _assert_affiliated_invariants(f, bases)
        # ordered by descending EFE eigenvalue
        assert np.all(np.diff(bases.overlaps) <= 1e-12)


def test_affiliate_degenerate_eigenspace():
    # equal overlaps make EFE maximally degenerate; invariants must survive
    e, f, _ = example_pair_generator(6, [0.8, 0.8, 0.8])
    bases = affiliate(e, f)
    _assert_affiliated_invariants(f, bases)
    assert_allclose(bases.overlaps, [0.8, 0.8, 0.8], atol=1e-12)


def test_lemma_implication_no_kernel_hit_when_proximate():
    rng = SplitMix64(404)
    tested = 0
    for _ in range(40):
        n = rng.randint(1, 4)
        alphas = [np.cos(rng.uniform_in(0.05, 1.5)) for _ in range(n)]
        e, f, _ = example_pair_generator(2 * n + 1, alphas)
        prox = proximity_check(e, f)
        if not prox.satisfied:
            continue
        tested += 1
        affiliate(e, f)  # must not raise KernelHit
    assert tested > 0


# -------------------------------------------------------- proximity check

def test_proximity_equal():
    e = rank1([1.0, 0.0])
    hs_sq, ok = proximity_check(e, e)
    assert hs_sq == pytest.approx(0.0, abs=1e-14) and ok


def test_proximity_orthogonal():
    hs_sq, ok = proximity_check(rank1([1.0, 0.0]), rank1([0.0, 1.0]))
    assert hs_sq == pytest.approx(2.0, abs=1e-14) and not ok


def test_proximity_partial_overlap():
    # Tr(EF) = 3/4 gives 2 * (1 - 3/4) = 0.5
    theta = np.arccos(np.sqrt(3.0) / 2.0)
    e, f = angled_pair(theta)
    hs_sq, ok = proximity_check(e, f)
    assert hs_sq == pytest.approx(0.5, abs=1e-12) and ok
