
class GraphCurvesException(Exception):
    """Base class for all graphcurves exceptions."""
    pass

class ConfigurationException(GraphCurvesException):
    """ Raised when a configuration variable holds a value that cannot be used """
    pass

class GraphFormatException(GraphCurvesException):
    """
    Raised when a graph file cannot be parsed.
    line_number is the 1-based line of the offending input, or None when the problem is global
    """
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number

class GraphHypothesisException(GraphCurvesException):
    """ Raised when a graph violates a hypothesis an operation relies on. E.g. it is disconnected, or an exterior vertex does not have exactly one interior neighbour """
    pass

class NotPlanarException(GraphCurvesException):
    """
    Raised when no planar embedding exists.
    witness holds the edges of a Kuratowski subgraph (a subdivision of K5 or K3,3) when one was found, otherwise None
    """
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

class EmbeddingException(GraphCurvesException):
    """ Raised when a rotation system is inconsistent or its faces fail Euler's formula """
    pass

class MoveException(GraphCurvesException):
    """ Raised when a local move (Delta-Y, Y-Delta, contraction-elongation) is not applicable or would produce a graph that is not simple """
    pass

class ReductionException(GraphCurvesException):
    """
    Raised when the reduction to K4 gets stuck.
    embedding is the state at which no move could be made
    """
    def __init__(self, message, embedding=None):
        super().__init__(message)
        self.embedding = embedding

class TraceException(GraphCurvesException):
    """ Raised when a reduction trace cannot be parsed or does not fit the embedding it is replayed on """
    pass

class ComplexException(GraphCurvesException):
    """ Raised when a tropical complex is malformed. E.g. two lines share a 1-cell or a segment ends at an unknown node """
    pass

class StageFailure(GraphCurvesException):
    """
    Raised by the certification pipeline.
    stage names the pipeline stage that failed
    """
    def __init__(self, message, stage):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage

class NotIntegralException(GraphCurvesException):
    """ Raised when a scalar with negative valuation is used where an element of the ring of integers is required """
    pass

class PolynomialFormatException(GraphCurvesException):
    """ Raised when polynomial text does not follow the term grammar """
    pass

class ComputationLimitException(GraphCurvesException):
    """ Raised when a search exceeds the limit set in the configuration """
    pass
