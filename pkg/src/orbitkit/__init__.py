"""Numerical toolkit for unitary orbits of finite-rank Hermitian operators.

Spectral projectors by interpolation polynomials, affiliated orthonormal
bases of projection pairs, explicit near-identity unitaries conjugating
isospectral operators with certified norm bounds, and moment-based
orbit invariants.
"""

from .affiliation import (
    AffiliatedBases,
    ProjectionPairSplit,
    affiliate,
    principal_frames,
    proximity_check,
    split,
)
from .config import DEFAULT, Tolerances, active_tolerances, load_tolerances
from .core import (
    CMatrix,
    HermitianOperator,
    OrthProjection,
    SchattenNorms,
    as_cmatrix,
    eigh,
    join,
    meet,
    op_abs,
    projector_onto,
    schatten_norms,
)
from .errors import (
    ClusterAmbiguity,
    ConditioningOverflow,
    DimensionTooSmall,
    FormatError,
    HypothesisViolated,
    KernelHit,
    NonConvergence,
    NotIsospectral,
    OrbitkitError,
    RankExceeded,
    RankMismatch,
    ToleranceAmbiguity,
)
from .generate import (
    operator_from_spectrum,
    orbit_pair,
    random_hermitian,
    random_spectrum,
    random_unitary_near_identity,
)
from .intertwiner import (
    IntertwinerCertificate,
    delta_audit,
    orbit_intertwiner,
    projection_intertwiner,
    spectra_match,
)
from .invariants import (
    ExamplePairExpected,
    MomentSignature,
    NormChain,
    OrbitComparison,
    ProjectiveDistances,
    example_pair_generator,
    moment_signature,
    norm_chain,
    orbit_comparison,
    projective_distances,
    same_orbit,
)
from .matrixio import MatrixFile, RunReport, file_digest, load_matrix, save_matrix
from .rng import SplitMix64, derive_seed
from .spectral import SpectralDecomposition, decompose, lagrange_projector, reconstruct

__version__ = "0.1.0"
