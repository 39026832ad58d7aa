"""Seeded instance generators for fixtures and property suites.

All randomness flows through the splitmix64 stream (see ``rng``), so an
instance is a pure function of (seed, parameters).  Generated spectra
draw distinct eigenvalues from a +-[0.25, 2.0] grid with spacing 0.125,
keeping interpolation nodes well separated; ambient dimensions leave a
nontrivial kernel block (d >= 2N + 1 unless the caller pins d).
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT, Tolerances
from .core import HermitianOperator, eigh
from .rng import SplitMix64

__all__ = [
    "random_hermitian",
    "random_unitary_near_identity",
    "random_spectrum",
    "operator_from_spectrum",
    "orbit_pair",
]

_GRID = [s * (0.25 + 0.125 * k) for s in (1.0, -1.0) for k in range(15)]


def random_hermitian(rng: SplitMix64, dim: int, scale: float = 1.0) -> HermitianOperator:
    """Dense Hermitian matrix with Gaussian entries."""
    g = rng.complex_matrix(dim, dim)
    return HermitianOperator(scale * (g + g.conj().T) / 2.0)


def random_unitary_near_identity(rng: SplitMix64, dim: int, size: float) -> np.ndarray:
    """Unitary exp(i H') for a random Hermitian H' with max |eig| = size.

    ||u - I|| = 2 sin(size/2) <= size (for size <= pi), so ``size``
    controls the distance from the identity directly.
    """
    if size == 0.0:
        return np.eye(dim, dtype=np.complex128)
    h = random_hermitian(rng, dim)
    w, v = eigh(h)
    top = float(np.max(np.abs(w)))
    phases = np.exp(1j * size * w / top)
    u = (v * phases) @ v.conj().T
    return u


def random_spectrum(rng: SplitMix64, max_blocks: int = 4, max_multiplicity: int = 3):
    """Distinct nonzero eigenvalues with multiplicities, grid-separated."""
    n = rng.randint(1, max_blocks)
    values = list(_GRID)
    rng.shuffle(values)
    lams = sorted(values[:n], reverse=True)
    return [(lam, rng.randint(1, max_multiplicity)) for lam in lams]


def operator_from_spectrum(spectrum, dim: int | None = None) -> HermitianOperator:
    """Diagonal operator realizing [(eigenvalue, multiplicity), ...].

    With ``dim`` unset, the ambient dimension is 2N + 1 so the kernel
    block stays nontrivial.
    """
    total = sum(m for _, m in spectrum)
    d = 2 * total + 1 if dim is None else dim
    if d < total:
        raise ValueError(f"dim {d} cannot hold rank {total}")
    diag = np.zeros(d, dtype=np.complex128)
    pos = 0
    for lam, mult in spectrum:
        diag[pos : pos + mult] = lam
        pos += mult
    return HermitianOperator(np.diag(diag))


def orbit_pair(
    rng: SplitMix64,
    spectrum,
    perturbation: float,
    dim: int | None = None,
    tol: Tolerances = DEFAULT,
):
    """(rho, u rho u*, u) with u a seeded near-identity unitary."""
    rho = operator_from_spectrum(spectrum, dim)
    u = random_unitary_near_identity(rng, rho.dim, perturbation)
    conj = u @ rho.matrix @ u.conj().T
    rho_prime = HermitianOperator((conj + conj.conj().T) / 2.0, tol)
    return rho, rho_prime, u
