"""Complex Hermitian linear algebra substrate.

Dense complex square matrices with certified Hermiticity, orthogonal
projections with certified idempotence, a deterministic Hermitian
eigendecomposition, the three Schatten norms

    ||A||_1 = Tr|A|,   ||A||_2 = sqrt(Tr|A|^2),   ||A||_inf = max eig |A|,

the operator absolute value |A| = sqrt(A*A), and the projection-lattice
operations meet (intersection of ranges) and join (span of ranges).

All operations are pure functions of their inputs; constructed values
are immutable and safe to share between threads.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import NonConvergence, ToleranceAmbiguity

__all__ = [
    "CMatrix",
    "HermitianOperator",
    "OrthProjection",
    "SchattenNorms",
    "as_cmatrix",
    "eigh",
    "schatten_norms",
    "op_abs",
    "meet",
    "join",
    "projector_onto",
]

#: Alias used in signatures: any dense complex square matrix.
CMatrix = np.ndarray


def as_cmatrix(entries) -> np.ndarray:
    """Validate and return a finite complex square matrix (d >= 1)."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    m.flags.writeable = False
    return m


def _op_norm(m: np.ndarray) -> float:
    """Operator (spectral) norm; Frobenius is a cheap upper bound."""
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def _defect_below(m: np.ndarray, bound: float) -> bool:
    # Frobenius dominates the operator norm, so a small Frobenius value
    # certifies the bound without an SVD.
    if float(np.linalg.norm(m)) <= bound:
        return True
    return _op_norm(m) <= bound


class HermitianOperator:
    """A Hermitian matrix, symmetrized at construction.

    The entrywise defect max |A_jk - conj(A_kj)| of the *input* is kept
    as a certificate; construction fails if it exceeds ``sym_tol``.  The
    stored matrix is the exactly Hermitian part (A + A*)/2.
    """

    __slots__ = ("matrix", "hermiticity_defect")

    def __init__(self, matrix, tol: Tolerances = DEFAULT):
        m = as_cmatrix(matrix)
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > tol.sym_tol:
            raise ValueError(
                f"hermiticity defect {defect:.3e} exceeds sym_tol {tol.sym_tol:.1e}"
            )
        self.matrix = _frozen((m + m.conj().T) / 2.0)
        self.hermiticity_defect = defect

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"


class OrthProjection:
    """An orthogonal projection with certified idempotence and rank.

    ``rank`` is the rounded trace; symmetry, idempotence, and the trace
    being near-integer are all verified against ``proj_tol`` (override
    with ``proj_tol=`` for routes with a looser certificate).
    """

    __slots__ = ("matrix", "rank")

    def __init__(self, matrix, tol: Tolerances = DEFAULT, proj_tol: float | None = None):
        m = as_cmatrix(matrix)
        budget = tol.proj_tol if proj_tol is None else proj_tol
        if not _defect_below(m - m.conj().T, budget):
            raise ValueError("projection is not Hermitian within proj_tol")
        m = (m + m.conj().T) / 2.0
        if not _defect_below(m @ m - m, budget):
            raise ValueError("projection is not idempotent within proj_tol")
        trace = float(np.trace(m).real)
        rank = int(round(trace))
        if abs(trace - rank) > budget * m.shape[0]:
            raise ValueError(f"trace {trace!r} is not near an integer rank")
        self.matrix = _frozen(m)
        self.rank = rank

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int, tol: Tolerances = DEFAULT) -> "OrthProjection":
        return cls(np.eye(dim, dtype=np.complex128), tol)

    @classmethod
    def zero(cls, dim: int, tol: Tolerances = DEFAULT) -> "OrthProjection":
        return cls(np.zeros((dim, dim), dtype=np.complex128), tol)

    def __repr__(self) -> str:
        return f"OrthProjection(dim={self.dim}, rank={self.rank})"


def _herm_matrix(a) -> np.ndarray:
    """Accept a HermitianOperator, OrthProjection, or array_like."""
    if isinstance(a, (HermitianOperator, OrthProjection)):
        return a.matrix
    m = as_cmatrix(a)
    return (m + m.conj().T) / 2.0


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so the first significant component is real positive."""
    mags = np.abs(v)
    peak = mags.max()
    if peak == 0.0:
        return v
    idx = int(np.argmax(mags > 1e-9 * peak))
    phase = v[idx] / abs(v[idx])
    return v * np.conj(phase)


def _lex_key(v: np.ndarray):
    return tuple(np.stack([v.real, v.imag], axis=1).ravel())


def eigh(a, tol: Tolerances = DEFAULT) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic Hermitian eigendecomposition.

    Returns ``(w, V)`` with eigenvalues ``w`` sorted descending and
    orthonormal eigenvectors in the columns of ``V`` (``w[k]`` belongs
    to ``V[:, k]``), so ``A = sum_k w[k] |V[:,k]><V[:,k]|``.

    Each eigenvector's phase is fixed by rotating its first significant
    component to the positive real axis; exactly tied eigenvalues are
    ordered by the lexicographic order of the phase-fixed vectors.  The
    output is therefore a pure function of the input matrix.
    """
    m = _herm_matrix(a)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"eigendecomposition failed: {exc}") from exc
    order = np.arange(w.size)[::-1]  # ascending -> descending
    w = w[order]
    v = v[:, order]
    for k in range(w.size):
        v[:, k] = _fix_phase(v[:, k])
    # stable ordering inside exactly-tied eigenvalue runs
    k = 0
    while k < w.size:
        run = k
        while run + 1 < w.size and w[run + 1] == w[k]:
            run += 1
        if run > k:
            cols = sorted(range(k, run + 1), key=lambda i: _lex_key(v[:, i]))
            v[:, k : run + 1] = v[:, cols]
        k = run + 1
    return w, v


class SchattenNorms(NamedTuple):
    trace_norm: float
    hs_norm: float
    op_norm: float


def schatten_norms(a, tol: Tolerances = DEFAULT) -> SchattenNorms:
    """Trace, Hilbert-Schmidt and operator norms of a Hermitian matrix.

    From the eigenvalues: sum |w|, sqrt(sum w^2), max |w|; the ordering
    op <= hs <= trace holds up to rounding.
    """
    m = _herm_matrix(a)
    try:
        w = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"eigendecomposition failed: {exc}") from exc
    aw = np.abs(w)
    if aw.size == 0:
        return SchattenNorms(0.0, 0.0, 0.0)
    return SchattenNorms(float(aw.sum()), float(np.sqrt((aw * aw).sum())), float(aw.max()))


def op_abs(a, tol: Tolerances = DEFAULT) -> HermitianOperator:
    """Operator absolute value |A| = sqrt(A*A) = sum |w_k| |x_k><x_k|."""
    w, v = eigh(a, tol)
    m = (v * np.abs(w)) @ v.conj().T
    return HermitianOperator((m + m.conj().T) / 2.0, tol)


def _coerce_proj(p, tol: Tolerances) -> OrthProjection:
    return p if isinstance(p, OrthProjection) else OrthProjection(p, tol)


def _check_same_dim(e: OrthProjection, f: OrthProjection) -> None:
    if e.dim != f.dim:
        raise ValueError(f"dimension mismatch: {e.dim} vs {f.dim}")


def meet(e, f, tol: Tolerances = DEFAULT) -> OrthProjection:
    """Projection onto range(E) ∩ range(F).

    Computed as the eigenspace of EFE with eigenvalues within
    ``meet_tol`` of 1.  Eigenvalues falling in the ambiguous band
    (1 - 10*meet_tol, 1 - meet_tol) raise ToleranceAmbiguity, as does a
    result that fails the symmetric verification QE = QF = Q = Q^2.
    """
    E, F = _coerce_proj(e, tol), _coerce_proj(f, tol)
    _check_same_dim(E, F)
    efe = E.matrix @ F.matrix @ E.matrix
    w, v = eigh(efe, tol)
    lo, hi = 1.0 - 10.0 * tol.meet_tol, 1.0 - tol.meet_tol
    if np.any((w > lo) & (w < hi)):
        raise ToleranceAmbiguity(
            "EFE eigenvalue in the ambiguous intersection band "
            f"({lo:.10f}, {hi:.10f}); the intersection is ill conditioned"
        )
    cols = v[:, w >= hi]
    q = cols @ cols.conj().T
    for other in (E.matrix, F.matrix):
        if not _defect_below(q @ other - q, tol.proj_tol):
            raise ToleranceAmbiguity("meet verification failed: Q is not below both factors")
    return OrthProjection(q, tol)


def join(e, f, tol: Tolerances = DEFAULT) -> OrthProjection:
    """Projection onto range(E) + range(F).

    The range of E + F is split from its kernel by eigenvalue; values in
    (meet_tol, 10*meet_tol) are ambiguous and raise ToleranceAmbiguity.
    """
    E, F = _coerce_proj(e, tol), _coerce_proj(f, tol)
    _check_same_dim(E, F)
    w, v = eigh(E.matrix + F.matrix, tol)
    lo, hi = tol.meet_tol, 10.0 * tol.meet_tol
    if np.any((w > lo) & (w < hi)):
        raise ToleranceAmbiguity(
            f"eigenvalue of E+F in the ambiguous kernel band ({lo:.1e}, {hi:.1e})"
        )
    cols = v[:, w >= hi]
    return OrthProjection(cols @ cols.conj().T, tol)


def projector_onto(columns: np.ndarray, tol: Tolerances = DEFAULT) -> OrthProjection:
    """Projection onto the column span of a d x k matrix (SVD-orthonormalized)."""
    cols = np.asarray(columns, dtype=np.complex128)
    if cols.ndim == 1:
        cols = cols.reshape(-1, 1)
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    keep = u[:, s > 1e-12 * (s[0] if s.size else 1.0)]
    return OrthProjection(keep @ keep.conj().T, tol)
