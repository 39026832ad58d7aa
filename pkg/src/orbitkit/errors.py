"""Exception hierarchy for orbitkit.

Every failure mode of the numerical constructions gets its own class so
callers (and the CLI exit-code mapping) can react to the *reason* a
construction broke down, not just to the fact that it did.
"""


class OrbitkitError(Exception):
    """Base class for all orbitkit errors."""


class NonConvergence(OrbitkitError):
    """The eigensolver failed to converge; usually pathological scaling."""


class ToleranceAmbiguity(OrbitkitError):
    """A spectral threshold decision fell inside the ambiguous band."""


class ClusterAmbiguity(ToleranceAmbiguity):
    """Two eigenvalue clusters ended up too close to separate reliably."""


class ConditioningOverflow(OrbitkitError):
    """Interpolation nodes too close; the node product underflows the spread."""


class KernelHit(OrbitkitError):
    """EFE has a (numerically) zero eigenvalue; the affiliation breaks down."""


class HypothesisViolated(OrbitkitError):
    """A quantitative hypothesis of a construction does not hold."""


class NotIsospectral(HypothesisViolated):
    """The two operators do not share (eigenvalue, multiplicity) data."""


class RankMismatch(HypothesisViolated):
    """Operands were required to have equal (or specific) ranks."""


class RankExceeded(HypothesisViolated):
    """An operand's rank exceeds the declared cap."""


class DimensionTooSmall(HypothesisViolated):
    """The ambient dimension cannot hold the requested construction."""


class FormatError(OrbitkitError):
    """Matrix file malformed, or its kind-specific invariant failed on load."""
