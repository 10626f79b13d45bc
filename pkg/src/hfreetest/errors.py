"""Exception hierarchy shared by all modules."""


class HFreeTestError(Exception):
    """Base class for all library errors."""


class ParseError(HFreeTestError):
    """Malformed graph input."""


class MalformedHeaderError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class MissingEdgeError(HFreeTestError):
    """A path references an edge that does not exist in the host graph."""


class NotAChainError(HFreeTestError):
    pass


class ResourceBudgetError(HFreeTestError):
    """An enumeration or search exceeded its configured budget."""


class BruteForceCapError(ResourceBudgetError):
    """Instance too large for an exact brute-force routine."""


class OracleError(HFreeTestError):
    pass


class IsolatedVertexError(OracleError):
    """Random-neighbor query on a vertex with no neighbors."""


class ScriptExhaustedError(OracleError):
    pass


class InvalidScriptAnswerError(OracleError):
    pass


class QueryBudgetExceededError(HFreeTestError):
    """The tester hit its hard query cap mid-run."""


class ParamsBudgetError(HFreeTestError):
    """Derived parameters imply a worst-case query count over budget."""


class GenerationError(HFreeTestError):
    """Instance generator could not satisfy the requested parameters."""


class ConfigError(HFreeTestError):
    """Invalid experiment or CLI configuration."""


class InternalInvariantError(HFreeTestError):
    """A runtime self-check failed; indicates a bug, not bad input."""
