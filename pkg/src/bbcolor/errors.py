"""Exception types shared across the package.

Class names follow the error vocabulary used throughout the public API
docs; everything derives from BackboneError so callers can catch broadly.
"""


class BackboneError(Exception):
    """Base class for all bbcolor errors."""


class GraphFormatError(BackboneError):
    """Malformed graph text input."""


class SelfLoop(BackboneError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(BackboneError):
    """The same unordered edge appears twice."""


class VertexOutOfRange(BackboneError):
    """An edge endpoint is not in 0..n-1."""


class CycleDetected(BackboneError):
    """The edge set contains a cycle, so it is not a forest."""


class NotATree(BackboneError):
    """A tree was required but the graph is disconnected or empty."""


class KOutOfRange(BackboneError):
    """Requested red/blue excess outside the feasible interval."""


class InstanceTooLarge(BackboneError):
    """Input exceeds the guard for an exhaustive operation."""


class KTooSmall(BackboneError):
    """Fewer colors than vertices requested from the exact solver."""


class LambdaTooSmall(BackboneError):
    """Backbone gap parameter below 2."""


class PreconditionViolated(BackboneError):
    """Interval-pair coloring called with infeasible intervals."""


class NotIndependent(BackboneError):
    """A vertex set that must be independent contains a backbone edge."""


class DegreeTooSmall(BackboneError):
    """Forest augmentation requires maximum degree at least 2."""


class OrderOutOfRange(BackboneError):
    """Fibonacci tree order outside the supported range."""


class NotAFibTreeSize(BackboneError):
    """Vertex count does not equal 3*F_N - 2 for any supported N."""


class AdjacentOnes(BackboneError):
    """Zeckendorf bit vector has two consecutive ones."""


class NotFibonacciTree(BackboneError):
    """The given tree is not shaped like a Fibonacci tree."""


class InvalidDecomposition(BackboneError):
    """A red-blue-yellow decomposition failed validation."""


class HypothesisViolated(BackboneError):
    """Impossibility-test hypothesis 2*lambda + l >= n does not hold."""


class SearchSpaceTooLarge(BackboneError):
    """Representation search would exceed the enumeration guard."""


class InfeasibleDegreeBound(BackboneError):
    """No tree on n vertices satisfies the requested degree bound."""


class BenchVerificationError(BackboneError):
    """A benchmark run produced a coloring that failed verification."""
