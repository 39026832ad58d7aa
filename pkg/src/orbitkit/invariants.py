"""Orbit identification and geometry.

Two Hermitian finite-rank operators lie on the same unitary orbit iff
they share nonzero eigenvalues with multiplicities.  That data is
encoded by the moment sequence

    a_n = Tr(rho^(n+2)),  n = 0, 1, 2, ...

which is the moment sequence of the atomic measure with an atom of mass
lambda_j^2 * m_j at each eigenvalue lambda_j.  At finite rank, finitely
many moments pin the measure, so moment equality plus direct spectral
comparison gives a double certificate of orbit membership.

Also here: the equivalence chain of the three Schatten norms on
operators of rank at most N (constant 2N), the two closed-form
distances on rank-1 projections (geodesic and trace-norm), and a
generator of projection pairs in prescribed mutual position whose
spectral data is known in closed form.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple

import numpy as np

from .config import DEFAULT, Tolerances
from .core import OrthProjection, _herm_matrix, schatten_norms
from .errors import DimensionTooSmall, RankExceeded, RankMismatch
from .spectral import decompose

__all__ = [
    "MomentSignature",
    "OrbitComparison",
    "NormChain",
    "ProjectiveDistances",
    "ExamplePairExpected",
    "moment_signature",
    "orbit_comparison",
    "same_orbit",
    "norm_chain",
    "projective_distances",
    "example_pair_generator",
]


@dataclasses.dataclass(frozen=True)
class MomentSignature:
    """Moments a_n = Tr(rho^(n+2)) for n <= K plus the atomic measure data."""

    moments: tuple[float, ...]
    atoms: tuple[tuple[float, float], ...]  # (eigenvalue, eigenvalue^2 * multiplicity)
    order: int

    def measure_moment(self, n: int) -> float:
        """n-th moment of the atomic measure, sum_j weight_j * lambda_j^n."""
        return float(sum(w * lam**n for lam, w in self.atoms))


def moment_signature(
    rho, order: int | None = None, cluster_tol: float | None = None, tol: Tolerances = DEFAULT
) -> MomentSignature:
    """Moment sequence a_0..a_K of rho and its atomic spectral measure.

    ``order`` defaults to 2n+2 for n distinct nonzero eigenvalues and
    must be at least 2n-1 (enough moments to pin the finite measure).
    The moments come from iterated matrix products; the atoms from the
    clustered eigendecomposition.  The two agree to high accuracy, which
    is the module's dual-route check.
    """
    m = _herm_matrix(rho)
    dec = decompose(m, cluster_tol, tol)
    n = dec.n
    k = 2 * n + 2 if order is None else int(order)
    if k < max(2 * n - 1, 0):
        raise ValueError(f"order {k} below 2n-1 = {2 * n - 1}: too few moments to pin {n} atoms")
    atoms = tuple(
        (lam, lam * lam * mult) for lam, mult in zip(dec.eigenvalues, dec.multiplicities)
    )
    moments = []
    power = m @ m
    moments.append(float(np.trace(power).real))
    for _ in range(k):
        power = power @ m
        moments.append(float(np.trace(power).real))
    return MomentSignature(tuple(moments), atoms, k)


@dataclasses.dataclass(frozen=True)
class OrbitComparison:
    """Double certificate: moment equality and direct spectral equality."""

    moments_match: bool
    spectra_match: bool

    @property
    def same_orbit(self) -> bool:
        return self.moments_match and self.spectra_match

    @property
    def anomaly(self) -> bool:
        """The two certificates disagree; should never happen."""
        return self.moments_match != self.spectra_match


def orbit_comparison(
    rho,
    nu,
    order: int | None = None,
    rel_tol: float = 1e-9,
    cluster_tol: float | None = None,
    tol: Tolerances = DEFAULT,
) -> OrbitComparison:
    """Compare two nonzero operators by moments and by clustered spectra."""
    ct = tol.cluster_tol if cluster_tol is None else float(cluster_tol)
    da = decompose(rho, ct, tol)
    db = decompose(nu, ct, tol)
    if da.total_rank == 0 or db.total_rank == 0:
        raise ValueError("orbit comparison requires nonzero operators")
    k = order if order is not None else 2 * max(da.n, db.n) + 2
    sig_a = moment_signature(rho, k, ct, tol)
    sig_b = moment_signature(nu, k, ct, tol)
    moments_ok = all(
        abs(x - y) <= rel_tol * (1.0 + abs(x))
        for x, y in zip(sig_a.moments, sig_b.moments)
    )
    spectra_ok = (
        da.n == db.n
        and da.multiplicities == db.multiplicities
        and all(abs(x - y) <= ct for x, y in zip(da.eigenvalues, db.eigenvalues))
    )
    return OrbitComparison(moments_ok, spectra_ok)


def same_orbit(
    rho,
    nu,
    order: int | None = None,
    rel_tol: float = 1e-9,
    cluster_tol: float | None = None,
    tol: Tolerances = DEFAULT,
) -> bool:
    """True iff the two operators lie on the same unitary orbit.

    Both certificates (moment equality at relative tolerance, and
    clustered spectra agreeing within cluster_tol) must concur.
    """
    return orbit_comparison(rho, nu, order, rel_tol, cluster_tol, tol).same_orbit


class NormChain(NamedTuple):
    trace_norm: float
    hs_norm: float
    op_norm: float
    chain_ok: bool


def norm_chain(a, b, rank_cap: int, cluster_tol: float | None = None, tol: Tolerances = DEFAULT) -> NormChain:
    """Schatten norms of A - B and the rank-capped equivalence chain.

    For rank(A), rank(B) <= N the three norms satisfy

        ||A-B||_2 <= ||A-B||_1 <= 2N ||A-B||_inf <= 2N ||A-B||_2,

    reported here with constant 2*rank_cap.  Raises RankExceeded if an
    operand's rank (after zero-clustering) exceeds the cap.
    """
    am = _herm_matrix(a)
    bm = _herm_matrix(b)
    for name, m in (("A", am), ("B", bm)):
        rank = decompose(m, cluster_tol, tol).total_rank
        if rank > rank_cap:
            raise RankExceeded(f"rank({name}) = {rank} exceeds cap {rank_cap}")
    n1, n2, ninf = schatten_norms(am - bm, tol)
    cap = 2.0 * rank_cap
    slack = 1e-12 * (1.0 + n1)
    ok = (n2 <= n1 + slack) and (n1 <= cap * ninf + slack) and (cap * ninf <= cap * n2 + slack)
    return NormChain(n1, n2, ninf, ok)


class ProjectiveDistances(NamedTuple):
    geodesic: float
    trace_dist: float


def projective_distances(p, r, tol: Tolerances = DEFAULT) -> ProjectiveDistances:
    """Geodesic and trace-norm distance between rank-1 projections.

        geodesic   = sqrt(2) * arccos( sqrt(Tr(P R)) )
        trace_dist = 2 * sqrt(1 - Tr(P R))

    so trace_dist = 2 * sqrt(1 - cos^2(geodesic / sqrt(2))).
    """
    P = p if isinstance(p, OrthProjection) else OrthProjection(p, tol)
    R = r if isinstance(r, OrthProjection) else OrthProjection(r, tol)
    if P.rank != 1 or R.rank != 1:
        raise RankMismatch(f"both projections must be rank 1, got {P.rank} and {R.rank}")
    if P.dim != R.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {R.dim}")
    overlap = float(np.trace(P.matrix @ R.matrix).real)
    overlap = min(1.0, max(0.0, overlap))
    return ProjectiveDistances(
        geodesic=math.sqrt(2.0) * math.acos(math.sqrt(overlap)),
        trace_dist=2.0 * math.sqrt(1.0 - overlap),
    )


@dataclasses.dataclass(frozen=True)
class ExamplePairExpected:
    """Closed-form predictions for a generated projection pair."""

    efe_spectrum: tuple[float, ...]  # |alpha_j|^2, descending
    hs_sq: float  # ||E - F||_2^2 = 2 (N - sum |alpha_j|^2)
    op_norm: float  # ||E - F|| = max sqrt(1 - |alpha_j|^2)


def example_pair_generator(
    dim: int, alpha, tol: Tolerances = DEFAULT
) -> tuple[OrthProjection, OrthProjection, ExamplePairExpected]:
    """Projection pair in prescribed mutual position, with known answers.

    E projects onto the first N standard basis vectors e_j; F onto the
    span of f_j = alpha_j e_j + beta_j e_(N+j) with beta_j =
    sqrt(1 - |alpha_j|^2) > 0.  Requires dim >= 2N and 0 < |alpha_j| < 1.
    The returned record carries the EFE spectrum {|alpha_j|^2}, the
    squared Hilbert-Schmidt distance 2(N - sum |alpha_j|^2) and the
    operator-norm distance max_j sqrt(1 - |alpha_j|^2).
    """
    alphas = np.asarray(alpha, dtype=np.complex128).ravel()
    n = alphas.size
    if n == 0:
        raise ValueError("alpha must be nonempty")
    mags = np.abs(alphas)
    if np.any(mags <= 0.0) or np.any(mags >= 1.0):
        raise ValueError("each |alpha_j| must lie strictly between 0 and 1")
    if dim < 2 * n:
        raise DimensionTooSmall(f"dim {dim} < 2 * len(alpha) = {2 * n}")
    e_mat = np.zeros((dim, dim), dtype=np.complex128)
    f_mat = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(n):
        e_mat[j, j] = 1.0
        f = np.zeros(dim, dtype=np.complex128)
        f[j] = alphas[j]
        f[n + j] = math.sqrt(1.0 - float(mags[j] ** 2))
        f_mat += np.outer(f, f.conj())
    expected = ExamplePairExpected(
        efe_spectrum=tuple(sorted((float(m * m) for m in mags), reverse=True)),
        hs_sq=2.0 * (n - float((mags**2).sum())),
        op_norm=float(np.sqrt(1.0 - (mags**2).min())),
    )
    return OrthProjection(e_mat, tol), OrthProjection(f_mat, tol), expected
