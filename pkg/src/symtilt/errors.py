from __future__ import annotations


class SymtiltError(Exception):
    """Base class for library errors."""


class StructuralError(SymtiltError, ValueError):
    """Malformed input: wrong dimensions, broken axioms, bad corners."""


class ContractViolation(SymtiltError, ValueError):
    """An argument does not satisfy an operation's precondition
    (e.g. a 'chain map' that does not commute with the differentials)."""


class PreconditionError(SymtiltError, ValueError):
    """A mathematical hypothesis of a construction fails
    (non-symmetric base algebra, empty approximation target, ...)."""


class UnsupportedFeatureError(SymtiltError, NotImplementedError):
    """The computation is deliberately restricted (e.g. radicals in
    positive characteristic)."""
