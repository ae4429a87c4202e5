"""Exception hierarchy shared by every module of the package."""


class CoherentPairsError(Exception):
    """Base class for computation errors raised by this package."""


class DegenerateParameterError(CoherentPairsError, ValueError):
    """A q-Pochhammer, q-number or eta factor vanished for the given parameter."""


class InsufficientMomentsError(CoherentPairsError, LookupError):
    """A moment was requested past the end of a finite moment source."""


class NonRegularError(CoherentPairsError):
    """A Hankel determinant (or squared norm) vanished.

    ``index`` is the first degree at which regularity fails.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PositiveDefinitenessError(NonRegularError):
    """A leading minor or squared norm that must be positive is not."""


class InconsistencyError(CoherentPairsError):
    """An identity that must hold under the stated hypotheses does not."""


class ConverseHypothesisError(InconsistencyError):
    """The relation assumed by a converse construction does not hold."""


class IncompleteDataError(CoherentPairsError, KeyError):
    """A coefficient needed by a construction is missing."""
