"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Matrix or dimension bookkeeping disagrees with the declared shapes."""


class MembershipError(ValueError):
    """A vector that should lie in a stated span does not."""


class ChainMapError(ValueError):
    """The chain-map identity d ∘ phi = phi ∘ d fails."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree (internal bug)."""


class RemainderError(ValueError):
    """Polynomial division that must be exact left a nonzero remainder."""


class DegreeError(ValueError):
    """A coefficient or parameter violates the degree/index constraints."""


class UnknownIdError(ValueError):
    """A coefficient refers to a generator id that does not exist."""


class InvalidDatumError(ValueError):
    """A Morse datum fails its algebraic validation (carries the violation)."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class NotPerfectError(ValueError):
    """A perfect Morse datum was required but the differential is nonzero."""


class SolverError(RuntimeError):
    """The dense symmetric eigensolver failed to converge."""


class AdequacyError(RuntimeError):
    """The (t, cutoff) combination cannot resolve the low eigenvalue cluster."""

    def __init__(self, message, suggested_cutoff=None):
        self.suggested_cutoff = suggested_cutoff
        super().__init__(message)


class DegreeMismatchError(ValueError):
    """A quasimode was requested at a cone degree it does not live in."""
