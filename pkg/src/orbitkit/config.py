"""Central tolerance ledger.

All epsilon decisions made anywhere in the package live in one frozen
record, so every threshold is auditable and overridable in one place.
The environment variable ``ORBITKIT_TOL_FILE`` may point at a JSON file
whose keys override individual defaults.
"""

from __future__ import annotations

import dataclasses
import json
import os


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by the whole package.

    sym_tol
        Max permitted entrywise Hermiticity defect at construction.
    proj_tol
        Operator-norm budget for idempotence/symmetry of projections.
    meet_tol
        Distance from 1 (resp. 0) at which an EFE eigenvalue counts as
        "inside the intersection" (resp. "inside the kernel of E+F").
        The band one decade wide below the threshold is ambiguous.
    ortho_tol
        Orthonormality budget for constructed bases.
    recon_tol
        Budget for round-trip reconstruction from spectral data.
    cluster_tol
        Default eigenvalue clustering gap (and zero fold-in radius).
    ker_tol
        EFE eigenvalues at or below this level abort the affiliation.
    lagrange_tol
        Certified agreement between the interpolation-polynomial route
        to spectral projections and the eigendecomposition route.
    unitary_tol
        Unitarity budget for emitted intertwiners.
    """

    sym_tol: float = 1e-12
    proj_tol: float = 1e-9
    meet_tol: float = 1e-7
    ortho_tol: float = 1e-10
    recon_tol: float = 1e-9
    cluster_tol: float = 1e-8
    ker_tol: float = 1e-10
    lagrange_tol: float = 1e-8
    unitary_tol: float = 1e-10


DEFAULT = Tolerances()

ENV_TOL_FILE = "ORBITKIT_TOL_FILE"


def load_tolerances(path: str) -> Tolerances:
    """Read a {field: value} JSON file and overlay it on the defaults."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    known = {f.name for f in dataclasses.fields(Tolerances)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
    return Tolerances(**{k: float(v) for k, v in raw.items()})


def active_tolerances() -> Tolerances:
    """Defaults, unless ORBITKIT_TOL_FILE points at an override file."""
    path = os.environ.get(ENV_TOL_FILE)
    if path:
        return load_tolerances(path)
    return DEFAULT
