"""Spectral decompositions and the interpolation-polynomial projector route.

A finite-rank Hermitian operator rho is resolved as

    rho = sum_j lambda_j E_j ,    E_0 = I - sum_j E_j ,   lambda_0 = 0,

with distinct nonzero eigenvalues lambda_j (clustered to ``cluster_tol``),
multiplicities N_j and orthogonal spectral projections E_j.  The same
projections are reachable without an eigendecomposition through the
interpolation polynomials

    p_j(z) = prod_{k != j} (z - lambda_k) / (lambda_j - lambda_k),

which satisfy p_j(lambda_k) = delta_jk, so p_j(rho) = E_j; agreement of
the two routes is the module's central cross-check.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .config import DEFAULT, Tolerances
from .core import HermitianOperator, OrthProjection, _herm_matrix, eigh
from .errors import ClusterAmbiguity, ConditioningOverflow

__all__ = ["SpectralDecomposition", "decompose", "lagrange_projector", "reconstruct"]


@dataclasses.dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct nonzero eigenvalues, multiplicities and projections.

    ``eigenvalues[j]`` is the multiplicity-weighted mean of cluster j
    (descending); ``projections[j]`` its spectral projection of rank
    ``multiplicities[j]``; ``complement`` is E_0 = I - sum E_j for the
    eigenvalue 0.  ``total_rank`` is sum(multiplicities).
    """

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    projections: tuple[OrthProjection, ...]
    complement: OrthProjection
    total_rank: int

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def dim(self) -> int:
        return self.complement.dim

    def support(self, tol: Tolerances = DEFAULT) -> OrthProjection:
        """Projection E = sum_j E_j onto the range of the operator."""
        m = np.eye(self.dim, dtype=np.complex128) - self.complement.matrix
        return OrthProjection(m, tol)


def _cluster(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Single-linkage clusters of a descending 1-d array."""
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and abs(values[groups[-1][-1]] - v) <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [np.array(g) for g in groups]


def decompose(rho, cluster_tol: float | None = None, tol: Tolerances = DEFAULT) -> SpectralDecomposition:
    """Cluster the spectrum of rho and build its spectral projections.

    Eigenvalues with |lambda| <= cluster_tol fold into the zero cluster;
    the rest merge by single-linkage with gap cluster_tol and each
    cluster is replaced by the mean of its members.  Raises
    ClusterAmbiguity when two surviving clusters (or a cluster and 0)
    end up closer than 10*cluster_tol.
    """
    ct = tol.cluster_tol if cluster_tol is None else float(cluster_tol)
    w, v = eigh(rho, tol)
    nonzero = np.abs(w) > ct
    idx_nonzero = np.flatnonzero(nonzero)
    groups = _cluster(w[idx_nonzero], ct)

    means: list[float] = []
    mults: list[int] = []
    projections: list[OrthProjection] = []
    for g in groups:
        members = idx_nonzero[g]
        mean = float(np.mean(w[members]))
        cols = v[:, members]
        means.append(mean)
        mults.append(len(members))
        projections.append(OrthProjection(cols @ cols.conj().T, tol))

    for a in range(len(means)):
        if abs(means[a]) < 10.0 * ct:
            raise ClusterAmbiguity(
                f"cluster mean {means[a]:.3e} is within 10*cluster_tol of 0; "
                "raise cluster_tol to fold it in or lower it to resolve"
            )
        for b in range(a + 1, len(means)):
            if abs(means[a] - means[b]) < 10.0 * ct:
                raise ClusterAmbiguity(
                    f"cluster means {means[a]:.6e} and {means[b]:.6e} differ "
                    "by less than 10*cluster_tol"
                )

    dim = v.shape[0]
    e0 = np.eye(dim, dtype=np.complex128)
    for p in projections:
        e0 = e0 - p.matrix
    return SpectralDecomposition(
        eigenvalues=tuple(means),
        multiplicities=tuple(mults),
        projections=tuple(projections),
        complement=OrthProjection(e0, tol),
        total_rank=int(sum(mults)),
    )


def lagrange_projector(rho, decomp: SpectralDecomposition, j: int, tol: Tolerances = DEFAULT) -> OrthProjection:
    """Spectral projection by interpolation polynomial, p_j(rho).

    Node 0 is the zero eigenvalue (E_0); nodes 1..n are the decomposition's
    distinct eigenvalues.  The polynomial is evaluated in product form
    prod (rho - lambda_k I)/(lambda_j - lambda_k), which avoids the
    cancellation of expanded coefficients.  Raises ConditioningOverflow
    when the node products degenerate relative to the spectral spread.
    """
    nodes = (0.0,) + decomp.eigenvalues
    if not 0 <= j < len(nodes):
        raise IndexError(f"j={j} outside 0..{len(nodes) - 1}")
    others = [nodes[k] for k in range(len(nodes)) if k != j]
    if others:
        denom = np.prod([nodes[j] - lk for lk in others])
        spread = max(nodes) - min(nodes)
        if abs(denom) < 1e-12 * spread ** len(others):
            raise ConditioningOverflow(
                f"node product {abs(denom):.3e} below 1e-12 * spread^{len(others)}"
            )
    m = _herm_matrix(rho)
    eye = np.eye(m.shape[0], dtype=np.complex128)
    poly = eye
    for lk in others:
        poly = poly @ (m - lk * eye) / (nodes[j] - lk)
    poly = (poly + poly.conj().T) / 2.0
    # certified against the eigendecomposition route to lagrange_tol, so
    # idempotence is checked at a correspondingly looser budget
    return OrthProjection(poly, tol, proj_tol=max(tol.proj_tol, 5.0 * tol.lagrange_tol))


def reconstruct(decomp: SpectralDecomposition, tol: Tolerances = DEFAULT) -> HermitianOperator:
    """Rebuild sum_j lambda_j E_j from the decomposition data."""
    m = np.zeros((decomp.dim, decomp.dim), dtype=np.complex128)
    for lam, proj in zip(decomp.eigenvalues, decomp.projections):
        m = m + lam * proj.matrix
    return HermitianOperator((m + m.conj().T) / 2.0, tol)
