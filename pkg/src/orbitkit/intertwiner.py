"""Near-identity unitaries conjugating projection pairs and isospectral operators.

Given equal-rank projections E, F whose overlap defect satisfies

    delta = N - Tr(EF) < epsilon^2 / 4      (0 < epsilon < 2),

a unitary u with u E u* = F and ||u - I|| < epsilon is built explicitly:
u acts as the identity off join(E, F) and maps each principal vector
e_j of the pair to its partner f_j (common directions stay fixed), and
likewise pairs the complements of the two ranges inside the join.  The
same mechanism applied per spectral block gives, for isospectral rho
and rho' with block defects

    delta_j = N_j - Tr(E_j F_j),    sum_j delta_j < epsilon^2 / 4,

a unitary v with v rho v* = rho' certified by the chain

    ||v-I||^2 <= ||v-I||_2^2 <= 2*sum delta_j + 2*delta <= 4*sum delta_j < epsilon^2.

Every certificate carries the audited quantities so each link of the
chain can be re-checked.

Implementation note: the complement frames are obtained from an SVD of
(I - E) applied to the f-frame.  Its singular values are the sines of
the principal angles; directions below ``_PERP_CUT`` belong to the
intersection and drop out, which keeps the construction smooth through
angle zero (no eigenvalue-band thresholding on nearly-aligned pairs).
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .affiliation import principal_frames
from .config import DEFAULT, Tolerances
from .core import OrthProjection, _fix_phase, _herm_matrix, _op_norm, eigh, schatten_norms
from .errors import HypothesisViolated, KernelHit, NotIsospectral
from .spectral import SpectralDecomposition, decompose

__all__ = [
    "IntertwinerCertificate",
    "projection_intertwiner",
    "orbit_intertwiner",
    "delta_audit",
    "spectra_match",
]

# sine-of-angle threshold separating "same direction" from "genuinely
# tilted"; the conjugation/unitarity error of dropping a direction is of
# the same order, far below every certified budget
_PERP_CUT = 1e-11


@dataclasses.dataclass(frozen=True)
class IntertwinerCertificate:
    """A constructed unitary together with its audited bound data."""

    v: np.ndarray
    epsilon: float
    delta_j: tuple[float, ...]
    delta: float
    op_norm_dev: float
    hs_norm_dev: float
    bound_ok: bool
    conjugation_residual: float

    @property
    def dim(self) -> int:
        return self.v.shape[0]


def _freeze(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m)
    m.flags.writeable = False
    return m


def _complement_frames(
    e_support: np.ndarray, f_support: np.ndarray, f_frame: np.ndarray, tol: Tolerances
) -> tuple[np.ndarray, np.ndarray]:
    """Paired frames for (join - E, join - F), built without the join.

    range(join - E) = range((I - E) F); an orthonormal basis comes from
    the left singular vectors of (I - E) f_frame with singular value
    above the intersection cutoff.  The pair's principal vectors are
    then computed in compressed form.
    """
    d = e_support.shape[0]
    if f_frame.shape[1] == 0:
        empty = np.zeros((d, 0), dtype=np.complex128)
        return empty, empty
    w = f_frame - e_support @ f_frame
    u, s, _ = np.linalg.svd(w, full_matrices=False)
    basis = u[:, s > _PERP_CUT]
    if basis.shape[1] == 0:
        empty = np.zeros((d, 0), dtype=np.complex128)
        return empty, empty
    # (join - F) compressed onto the basis: I - B* F B
    compressed = np.eye(basis.shape[1], dtype=np.complex128) - (
        basis.conj().T @ f_support @ basis
    )
    compressed = (compressed + compressed.conj().T) / 2.0
    mu, c = eigh(compressed, tol)
    if float(mu[-1]) <= tol.ker_tol:
        raise KernelHit(
            f"complement pair eigenvalue {mu[-1]:.3e} at or below ker_tol; "
            "the ranges are too far apart to pair"
        )
    e_bot = basis @ c
    for k in range(e_bot.shape[1]):
        e_bot[:, k] = _fix_phase(e_bot[:, k])
    f_bot = e_bot - f_support @ e_bot
    f_bot = f_bot / np.linalg.norm(f_bot, axis=0)
    inner = np.einsum("ij,ij->j", f_bot.conj(), e_bot)
    f_bot = f_bot * (inner / np.abs(inner)).conj()
    return e_bot, f_bot


def _assemble(e_frame, f_frame, e_bot, f_bot, d: int) -> np.ndarray:
    v = np.eye(d, dtype=np.complex128)
    if e_frame.shape[1]:
        v = v + (f_frame - e_frame) @ e_frame.conj().T
    if e_bot.shape[1]:
        v = v + (f_bot - e_bot) @ e_bot.conj().T
    return v


def _certify(v, epsilon, delta_list, delta, source, target, tol) -> IntertwinerCertificate:
    d = v.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    unit_defect = _op_norm(v.conj().T @ v - eye)
    if unit_defect > tol.unitary_tol:
        raise ArithmeticError(f"constructed map is not unitary: defect {unit_defect:.3e}")
    dev = v - eye
    op_dev = _op_norm(dev)
    hs_dev = float(np.linalg.norm(dev))
    residual = schatten_norms(v @ source @ v.conj().T - target, tol).trace_norm
    return IntertwinerCertificate(
        v=_freeze(v),
        epsilon=float(epsilon),
        delta_j=tuple(float(x) for x in delta_list),
        delta=float(delta),
        op_norm_dev=op_dev,
        hs_norm_dev=hs_dev,
        bound_ok=bool(op_dev < epsilon),
        conjugation_residual=residual,
    )


def projection_intertwiner(e, f, epsilon: float, tol: Tolerances = DEFAULT) -> IntertwinerCertificate:
    """Unitary u with u E u* = F and ||u - I|| < epsilon.

    Requires rank(E) = rank(F), 0 < epsilon < 2 and the overlap defect
    N - Tr(EF) < epsilon^2/4; otherwise HypothesisViolated is raised
    and no unitary is emitted.
    """
    E = e if isinstance(e, OrthProjection) else OrthProjection(e, tol)
    F = f if isinstance(f, OrthProjection) else OrthProjection(f, tol)
    if not 0.0 < epsilon < 2.0:
        raise HypothesisViolated(f"epsilon must lie in (0, 2), got {epsilon}")
    if E.dim != F.dim:
        raise ValueError(f"dimension mismatch: {E.dim} vs {F.dim}")
    if E.rank != F.rank:
        raise HypothesisViolated(f"rank(E)={E.rank} != rank(F)={F.rank}")
    defect = max(0.0, E.rank - float(np.trace(E.matrix @ F.matrix).real))
    if not defect < epsilon * epsilon / 4.0:
        raise HypothesisViolated(
            f"N - Tr(EF) = {defect:.6e} is not below epsilon^2/4 = {epsilon * epsilon / 4.0:.6e}"
        )
    e_frame, f_frame, _ = principal_frames(E.matrix, F.matrix, E.rank, tol)
    e_bot, f_bot = _complement_frames(E.matrix, F.matrix, f_frame, tol)
    u = _assemble(e_frame, f_frame, e_bot, f_bot, E.dim)
    return _certify(u, epsilon, [defect], defect, E.matrix, F.matrix, tol)


def spectra_match(a: SpectralDecomposition, b: SpectralDecomposition, cluster_tol: float) -> bool:
    """Whether two decompositions carry the same (eigenvalue, multiplicity) data."""
    if a.n != b.n or a.multiplicities != b.multiplicities:
        return False
    return all(abs(x - y) <= cluster_tol for x, y in zip(a.eigenvalues, b.eigenvalues))


def _block_defects(da: SpectralDecomposition, db: SpectralDecomposition):
    deltas = []
    for nj, ej, fj in zip(da.multiplicities, da.projections, db.projections):
        deltas.append(max(0.0, nj - float(np.trace(ej.matrix @ fj.matrix).real)))
    e = da.support().matrix
    f = db.support().matrix
    delta = max(0.0, da.total_rank - float(np.trace(e @ f).real))
    return deltas, delta


def delta_audit(rho, rho_prime, cluster_tol: float | None = None, tol: Tolerances = DEFAULT):
    """Per-block defects delta_j = N_j - Tr(E_j F_j) and total delta = N - Tr(EF).

    Raises NotIsospectral when the clustered spectra disagree.
    """
    ct = tol.cluster_tol if cluster_tol is None else float(cluster_tol)
    da = decompose(rho, ct, tol)
    db = decompose(rho_prime, ct, tol)
    if not spectra_match(da, db, ct):
        raise NotIsospectral("operators disagree on (eigenvalue, multiplicity) data")
    deltas, delta = _block_defects(da, db)
    return tuple(deltas), delta


def orbit_intertwiner(
    rho,
    rho_prime,
    epsilon: float,
    cluster_tol: float | None = None,
    tol: Tolerances = DEFAULT,
) -> IntertwinerCertificate:
    """Unitary v with v rho v* = rho' and ||v - I|| < epsilon.

    rho and rho' must be isospectral (same clustered eigenvalues and
    multiplicities) and close enough that sum_j delta_j < epsilon^2/4,
    with 0 < epsilon^2 < 1.  v fixes the complement of join(E, F)
    pointwise and maps the principal frames of each spectral block pair
    (E_j, F_j), then those of the complement pair inside the join.
    rho''s eigenvalues are snapped to rho's cluster means by the block
    matching; any drift lands in ``conjugation_residual``.
    """
    if not 0.0 < epsilon < 1.0:
        raise HypothesisViolated(f"epsilon^2 must lie in (0, 1), got epsilon={epsilon}")
    ct = tol.cluster_tol if cluster_tol is None else float(cluster_tol)
    rho_m = _herm_matrix(rho)
    rho_p_m = _herm_matrix(rho_prime)
    da = decompose(rho_m, ct, tol)
    db = decompose(rho_p_m, ct, tol)
    if not spectra_match(da, db, ct):
        raise NotIsospectral("operators disagree on (eigenvalue, multiplicity) data")
    deltas, delta = _block_defects(da, db)
    total = sum(deltas)
    if not total < epsilon * epsilon / 4.0:
        raise HypothesisViolated(
            f"sum of block defects {total:.6e} is not below epsilon^2/4 "
            f"= {epsilon * epsilon / 4.0:.6e}"
        )

    d = da.dim
    e_cols = []
    f_cols = []
    for nj, ej, fj in zip(da.multiplicities, da.projections, db.projections):
        be, bf, _ = principal_frames(ej.matrix, fj.matrix, nj, tol)
        e_cols.append(be)
        f_cols.append(bf)
    if e_cols:
        e_frame = np.hstack(e_cols)
        f_frame = np.hstack(f_cols)
    else:
        e_frame = np.zeros((d, 0), dtype=np.complex128)
        f_frame = e_frame
    e_support = da.support(tol).matrix
    f_support = db.support(tol).matrix
    e_bot, f_bot = _complement_frames(e_support, f_support, f_frame, tol)
    v = _assemble(e_frame, f_frame, e_bot, f_bot, d)
    return _certify(v, epsilon, deltas, delta, rho_m, rho_p_m, tol)
