class ContagionLabError(Exception):
    """
    Base class for all errors raised by the lab.

    :param detail: A description of the error.
    """

    def __init__(self, message=None, detail=None):
        super().__init__(message or detail)
        self.detail = detail


class GraphConstructionError(ContagionLabError):
    """
    Raised when an edge list cannot form a simple undirected graph.

    :param detail: A description of the offending edge or count.
    """


class InvalidVertexSetError(ContagionLabError):
    """
    Raised when a vertex set refers to vertices outside the graph.

    :param detail: A description of the invalid members.
    """


class ParameterError(ContagionLabError):
    """
    Raised when model parameters violate their preconditions.

    :param detail: A description of the violated precondition.
    """


class GenerationError(ContagionLabError):
    """
    Raised when a random generator gives up (e.g. stub pairing keeps failing).

    :param detail: A description of the failure.
    """


class CascadeStalledError(ContagionLabError):
    """
    Raised when a cascade can no longer grow before reaching its target size.

    :param detail: A description of the stall.
    :param reached: Number of infected vertices when the cascade stalled.
    :param partial: The contagious network grown so far.
    """

    def __init__(self, message=None, detail=None, reached=0, partial=None):
        super().__init__(message, detail)
        self.reached = reached
        self.partial = partial


class FitUndefinedError(ContagionLabError):
    """
    Raised when a degree histogram cannot support a power-law fit.

    :param detail: Why the fit is undefined.
    """


class UndefinedConductanceError(ContagionLabError):
    """
    Raised when a conductance denominator is zero or the cut is trivial.

    :param detail: Why the conductance is undefined.
    """


class EmptyGraphError(ContagionLabError):
    """
    Raised when an operation needs at least one vertex.

    :param detail: A description of the operation.
    """


class EnumerationGuardError(ContagionLabError):
    """
    Raised when an exhaustive oracle is asked to enumerate a graph that is too large.

    :param detail: The size limit that was exceeded.
    """


class PartitionMismatchError(ContagionLabError):
    """
    Raised when a clique partition does not cover the vertices it is applied to.

    :param detail: A description of the mismatch.
    """


class ConfigValidationError(ContagionLabError):
    """
    Raised when an experiment config is invalid.

    :param detail: A summary of the problem.
    :param violations: Every violation found, one string each.
    """

    def __init__(self, message=None, detail=None, violations=None):
        super().__init__(message, detail)
        self.violations = list(violations or [])


class SchemaMismatchError(ContagionLabError):
    """
    Raised when a CSV file does not follow the expected metrics schema.

    :param detail: The name of the missing or unexpected column.
    """
