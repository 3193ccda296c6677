"""Exception types shared across the toolkit."""


class HcstError(Exception):
    """Base class for all toolkit errors."""


class ParseError(HcstError):
    """Malformed instance file. Carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class InfeasibleInstanceError(HcstError):
    """A terminal cannot be connected within the hop budget."""

    def __init__(self, terminal: int, message: str = ""):
        detail = message or f"terminal {terminal} has no hop-feasible connection"
        super().__init__(detail)
        self.terminal = terminal


class StructureError(HcstError):
    """An edge set that was required to form a tree does not."""


class UnreachableError(HcstError):
    """Path reconstruction was requested for an unreachable table entry."""


class PairingError(HcstError):
    """Two run-record sequences could not be paired one-to-one."""

    def __init__(self, key, message: str = ""):
        super().__init__(message or f"unpaired run record for key {key!r}")
        self.key = key


class SolverPostconditionError(HcstError):
    """A solver produced a structure violating its own guarantees.

    Carries the offending edge set for diagnosis.
    """

    def __init__(self, message: str, edges):
        super().__init__(message)
        self.edges = frozenset(edges)
