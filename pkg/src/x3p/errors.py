"""Exception hierarchy shared by all x3p modules."""


class X3PError(Exception):
    """Base class for every error raised by this package."""


class NonPrime(X3PError, ValueError):
    pass


class OrderTooLarge(X3PError, ValueError):
    pass


class MixedFields(X3PError, ValueError):
    pass


class BadSubfieldOrder(X3PError, ValueError):
    pass


class OutOfRange(X3PError, ValueError):
    pass


class NotSidon(X3PError, ValueError):
    pass


class NotSubgroup(X3PError, ValueError):
    pass


class DivisibilityViolated(X3PError, ValueError):
    def __init__(self, t, q):
        super().__init__(f"t={t} does not divide q-1={q - 1}")
        self.t = t
        self.q = q


class PreconditionFailed(X3PError, ValueError):
    pass


class NotUnit(X3PError, ValueError):
    pass


class DifferenceOverlap(X3PError, ValueError):
    pass


class EmptySet(X3PError, ValueError):
    pass


class STooLarge(X3PError, ValueError):
    pass


class BadParams(X3PError, ValueError):
    pass


class RaggedBlocks(X3PError, ValueError):
    pass


class SearchBudgetExceeded(X3PError, RuntimeError):
    pass


class GraphFormatError(X3PError, ValueError):
    """Malformed x3p-graph file; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message, lineno=0):
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)
        self.lineno = lineno


class PartitionError(X3PError, ValueError):
    """Adjacency violates the partition invariants (intra-part edge, loop, asymmetry)."""
