"""Exception hierarchy shared by every module of the toy-model engine."""


class ToyModelError(Exception):
    """Base class for all engine errors."""


class IllFormed(ToyModelError):
    """Operands cannot be combined by any rule (e.g. states from different domains)."""


class UnknownEdge(ToyModelError):
    """The model has no map edge for the requested (kind, domain) pair."""


class MixedParity(ToyModelError):
    """Joint operands share no common correlated domain."""


class NoRepresentation(ToyModelError):
    """A correlated state has no spelling in the requested local bases."""


class InconsistentTable(ToyModelError):
    """Two distinct correlated states collapse onto the same representative."""


class ScopeMismatch(ToyModelError):
    """A test was applied to a state of the wrong arity."""


class UndefinedForVariant(ToyModelError):
    """A transformation does not exist in the active model variant."""


class BadSharedState(ToyModelError):
    """A protocol was given a shared resource it cannot use."""


class DepthTooLarge(ToyModelError):
    """The bounded enumeration would exceed its budget."""


class UnknownDomain(ToyModelError):
    """A domain label is not part of the active model."""


class ParseError(ToyModelError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
