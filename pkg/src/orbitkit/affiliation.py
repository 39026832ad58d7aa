"""Affiliated orthonormal bases for a pair of orthogonal projections.

For projections E, F with equal finite rank and trivial intersection,
the compression EFE restricted to range(E) is strictly positive exactly
when no unit vector of either range is orthogonal to the whole other
range.  Its eigenvectors {e_j} diagonalize <e_j|F|e_k>, and

    f_j = F e_j / ||F e_j||,      e_j_perp = (I - E) f_j / ||(I - E) f_j||

give an orthonormal basis of range(F) and of the part of join(E, F)
beyond E, such that

    f_j = alpha_j e_j + beta_j e_j_perp,
    alpha_j = <f_j|e_j> = ||F e_j|| = sqrt(eigenvalue_j) > 0,
    beta_j  = sqrt(1 - alpha_j^2) > 0,

and <f_j|e_k> = 0 for j != k.  The eigenvalues of EFE are the squared
cosines of the principal angles between the two ranges, and the pairing
(e_j, f_j) is the principal-vector pairing in that language.

``split`` peels the common part E ∧ F off an arbitrary equal-rank pair,
so ``affiliate`` can then be applied to the primed remainder.
"""

from __future__ import annotations

import dataclasses
from typing import NamedTuple

import numpy as np

from .config import DEFAULT, Tolerances
from .core import OrthProjection, _fix_phase, eigh, join, meet
from .errors import KernelHit, RankMismatch

__all__ = ["ProjectionPairSplit", "AffiliatedBases", "split", "affiliate", "proximity_check"]


@dataclasses.dataclass(frozen=True)
class ProjectionPairSplit:
    """A projection pair with its common part peeled off.

    Q = E ∧ F; E_prime = E - Q and F_prime = F - Q intersect trivially;
    e_perp / f_perp are the complements of E_prime / F_prime inside
    join(E_prime, F_prime); n_prime is the shared rank of all four.
    """

    q: OrthProjection
    e_prime: OrthProjection
    f_prime: OrthProjection
    e_perp: OrthProjection
    f_perp: OrthProjection
    n_prime: int


@dataclasses.dataclass(frozen=True)
class AffiliatedBases:
    """Paired orthonormal systems for a trivially-intersecting pair.

    Columns of ``e``, ``f``, ``e_perp`` are the vectors e_j, f_j,
    e_j_perp ordered by descending EFE eigenvalue; ``alpha``/``beta``
    are the (real positive) expansion coefficients of f_j over
    (e_j, e_j_perp); ``overlaps`` are the measured <f_j|e_j>.
    """

    e: np.ndarray
    f: np.ndarray
    e_perp: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    overlaps: np.ndarray

    @property
    def size(self) -> int:
        return self.e.shape[1]


class ProximityCheck(NamedTuple):
    hs_sq: float
    satisfied: bool


def _as_proj(p, tol: Tolerances) -> OrthProjection:
    return p if isinstance(p, OrthProjection) else OrthProjection(p, tol)


def proximity_check(e, f, tol: Tolerances = DEFAULT) -> ProximityCheck:
    """Tr[(E - F)^2] and whether it is below the critical value 2."""
    E, F = _as_proj(e, tol), _as_proj(f, tol)
    if E.dim != F.dim:
        raise ValueError(f"dimension mismatch: {E.dim} vs {F.dim}")
    diff = E.matrix - F.matrix
    hs_sq = float(np.trace(diff @ diff).real)
    return ProximityCheck(hs_sq, hs_sq < 2.0)


def split(e, f, tol: Tolerances = DEFAULT) -> ProjectionPairSplit:
    """Peel E ∧ F off a pair of equal-rank projections.

    The three Hilbert-Schmidt distances Tr[(E-F)^2], Tr[(E'-F')^2] and
    Tr[(E'_perp - F'_perp)^2] coincide; this is verified to 1e-9.
    """
    E, F = _as_proj(e, tol), _as_proj(f, tol)
    if E.dim != F.dim:
        raise ValueError(f"dimension mismatch: {E.dim} vs {F.dim}")
    if E.rank != F.rank:
        raise RankMismatch(f"rank(E)={E.rank} != rank(F)={F.rank}")
    q = meet(E, F, tol)
    e1 = OrthProjection(E.matrix - q.matrix, tol)
    f1 = OrthProjection(F.matrix - q.matrix, tol)
    hull = join(e1, f1, tol)
    e_perp = OrthProjection(hull.matrix - e1.matrix, tol)
    f_perp = OrthProjection(hull.matrix - f1.matrix, tol)

    def _hs_sq(a, b):
        d = a.matrix - b.matrix
        return float(np.trace(d @ d).real)

    base = _hs_sq(E, F)
    if abs(_hs_sq(e1, f1) - base) > 1e-9 or abs(_hs_sq(e_perp, f_perp) - base) > 1e-9:
        raise ValueError("split verification failed: HS distances disagree")
    return ProjectionPairSplit(q, e1, f1, e_perp, f_perp, e1.rank)


def principal_frames(
    e_matrix: np.ndarray, f_matrix: np.ndarray, rank: int, tol: Tolerances = DEFAULT
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Principal-vector frames (e_j, f_j) and EFE eigenvalues mu_j.

    ``e_matrix``/``f_matrix`` are projection matrices; ``rank`` is the
    rank of E.  Returns column frames ``e`` (orthonormal basis of
    range E diagonalizing EFE, eigenvalues descending) and ``f`` with
    f_j = F e_j / ||F e_j||, plus the eigenvalues.  Stable for any
    mutual position, including mu_j = 1 (common directions, f_j = e_j);
    raises KernelHit when some mu_j <= ker_tol.
    """
    d = e_matrix.shape[0]
    if rank == 0:
        empty = np.zeros((d, 0), dtype=np.complex128)
        return empty, empty, np.zeros(0)
    _, v_e = eigh(e_matrix, tol)
    basis = v_e[:, :rank]
    compressed = basis.conj().T @ f_matrix @ basis
    mu, c = eigh(compressed, tol)
    if float(mu[-1]) <= tol.ker_tol:
        raise KernelHit(
            f"smallest EFE eigenvalue {mu[-1]:.3e} is at or below ker_tol {tol.ker_tol:.1e}"
        )
    e_vecs = basis @ c
    for k in range(rank):
        e_vecs[:, k] = _fix_phase(e_vecs[:, k])
    f_vecs = f_matrix @ e_vecs
    f_vecs = f_vecs / np.linalg.norm(f_vecs, axis=0)
    # land each <f_j|e_j> on the positive real axis
    inner = np.einsum("ij,ij->j", f_vecs.conj(), e_vecs)
    f_vecs = f_vecs * (inner / np.abs(inner)).conj()
    return e_vecs, f_vecs, mu


def affiliate(e, f, tol: Tolerances = DEFAULT) -> AffiliatedBases:
    """Construct the affiliated bases of a trivially-intersecting pair.

    Callers with a possibly nontrivial intersection apply ``split``
    first and affiliate the primed pair.  Raises KernelHit when some
    eigenvalue of EFE is at or below ``ker_tol`` (a vector of one range
    is numerically orthogonal to the whole other range, which is
    exactly how the construction's hypothesis fails).
    """
    E, F = _as_proj(e, tol), _as_proj(f, tol)
    if E.dim != F.dim:
        raise ValueError(f"dimension mismatch: {E.dim} vs {F.dim}")
    if E.rank != F.rank:
        raise RankMismatch(f"rank(E)={E.rank} != rank(F)={F.rank}")
    n, d = E.rank, E.dim
    if n == 0:
        empty = np.zeros((d, 0), dtype=np.complex128)
        reals = np.zeros(0)
        return AffiliatedBases(empty, empty, empty, reals, reals, reals)
    e_vecs, f_vecs, mu = principal_frames(E.matrix, F.matrix, n, tol)
    if float(mu[0]) >= 1.0 - tol.meet_tol:
        raise ValueError(
            "EFE has an eigenvalue at 1: the pair has a nontrivial "
            "intersection; apply split() first"
        )
    perp = f_vecs - E.matrix @ f_vecs
    perp = perp / np.linalg.norm(perp, axis=0)
    overlaps = np.einsum("ij,ij->j", f_vecs.conj(), e_vecs).real
    beta = np.einsum("ij,ij->j", perp.conj(), f_vecs).real
    return AffiliatedBases(
        e=e_vecs,
        f=f_vecs,
        e_perp=perp,
        alpha=overlaps.copy(),
        beta=beta,
        overlaps=overlaps,
    )
