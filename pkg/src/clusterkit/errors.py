"""Exception hierarchy shared by all clusterkit modules."""


class ClusterKitError(Exception):
    """Base class for all domain errors raised by clusterkit."""


class VariableCountMismatch(ClusterKitError):
    pass


class DivisionByZero(ClusterKitError):
    pass


class NotDivisible(ClusterKitError):
    """Exact Laurent division left a nonzero remainder."""


class ZeroCoordinate(ClusterKitError):
    pass


class ParseError(ClusterKitError):
    pass


class IndexOutOfRange(ClusterKitError):
    pass


class LaurentViolation(ClusterKitError):
    """A mutation produced a non-Laurent quotient; fatal diagnostic."""


class ZeroEntry(ClusterKitError):
    pass


class BudgetExceeded(ClusterKitError):
    pass


class RankMismatch(ClusterKitError):
    pass


class InconsistentQuotient(ClusterKitError):
    """Edge multiplicities in the level quotient depend on the representative."""


class UnknownFormat(ClusterKitError):
    pass


class LevelOutOfRange(ClusterKitError):
    pass


class NotPrimitive(ClusterKitError):
    pass


class InvalidFactor(ClusterKitError):
    pass


class BoundExceeded(ClusterKitError):
    pass


class DiscriminantNegative(ClusterKitError):
    pass


class NotComparable(ClusterKitError):
    pass


class InvalidParameters(ClusterKitError):
    pass


class StrandMismatch(ClusterKitError):
    pass


class TooManyCrossings(ClusterKitError):
    pass


class RelationViolated(ClusterKitError):
    pass
