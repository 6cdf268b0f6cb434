"""Exception types shared across the package."""


class ListChoiceError(Exception):
    """Base class for all package errors."""


class DisconnectedInput(ListChoiceError):
    """Operation requires a connected graph."""


class EmptyGraph(ListChoiceError):
    """Operation requires a non-empty graph."""


class NotApplicable(ListChoiceError):
    """Preconditions of a structural routine are violated."""


class OddCycle(ListChoiceError):
    """Digraph contains an odd directed cycle; carries a witness cycle."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"odd directed cycle: {self.witness}")


class ListTooSmall(ListChoiceError):
    """A vertex list is below the size a chooser requires."""

    def __init__(self, vertex, need, have):
        self.vertex = vertex
        self.need = need
        self.have = have
        super().__init__(f"list of vertex {vertex} has {have} colors, need {need}")


class NotChordal(ListChoiceError):
    """Graph has an induced cycle of length >= 4."""


class Not2Choosable(ListChoiceError):
    """Graph core is outside the 2-choosable family."""


class NotBipartite(ListChoiceError):
    """Graph or declared bipartition is not bipartite."""


class NotSimple(ListChoiceError):
    """Requested construction would create parallel edges or loops."""


class DegenerateParameters(ListChoiceError):
    """Generator parameters outside their documented range."""


class OverlappingParts(ListChoiceError):
    """Vertex parts must be pairwise disjoint."""


class SizeMismatch(ListChoiceError):
    """Set family sizes do not match the partition contract."""


class BudgetExceeded(ListChoiceError):
    """Exhaustive search hit its node budget; no verdict."""

    def __init__(self, nodes, budget):
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"search budget exceeded ({nodes} >= {budget} nodes)")


class Exhausted(ListChoiceError):
    """Las Vegas procedure ran out of attempts (not a proof of impossibility)."""

    def __init__(self, attempts):
        self.attempts = attempts
        super().__init__(f"no verified choice within {attempts} attempts")


class NoMajorityBlock(ListChoiceError):
    """Block-majority extraction failed; the supplied choice violates its contract."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no majority block")


class OracleRefused(ListChoiceError):
    """A supplied coloring oracle answered no; the caller's premise is wrong."""


class ChooserRefused(ListChoiceError):
    """A supplied list chooser failed; the caller's premise is wrong."""


class UnknownSuite(ListChoiceError):
    """Suite name is not one of the published bundles."""
