"""Exception types raised by the validating constructors.

Every error message names a concrete witness (the offending triple, element,
or map) so a failing construction can be debugged from the message alone.
"""

from __future__ import annotations

__all__ = [
    "ValidationError",
    "NotAssociative",
    "NoIdentity",
    "NoInverse",
    "NotAPermutation",
    "ClosureBoundExceeded",
    "NotASubgroup",
    "NotAHomomorphism",
    "NotNormal",
    "NotInjective",
    "NotSurjective",
    "NotExact",
    "NotASection",
    "NotNormalInE",
    "NotAnAction",
    "NotALift",
    "DifferenceEscapesA",
    "NotACocycle",
    "NotACocycleForThisAction",
    "ActionMismatch",
    "NotTrivialOnKernel",
    "IncompatibleTower",
    "BoundExceeded",
    "ManifestSyntaxError",
    "UnknownName",
]


class ValidationError(ValueError):
    """Base class for every structural validation failure in this package."""


class NotAssociative(ValidationError):
    """A multiplication table violates associativity; names the witness triple."""


class NoIdentity(ValidationError):
    """A multiplication table has no two-sided identity element."""


class NoInverse(ValidationError):
    """Some element of a table has no inverse; names the element."""


class NotAPermutation(ValidationError):
    """A claimed permutation is not a bijection on its domain."""


class ClosureBoundExceeded(ValidationError):
    """Generator closure grew past the configured element cap."""


class NotASubgroup(ValidationError):
    """An element set is not closed, misses the identity, or lacks inverses."""


class NotAHomomorphism(ValidationError):
    """A map between groups fails multiplicativity; names the witness pair."""


class NotNormal(ValidationError):
    """A subgroup is not stable under conjugation; names the conjugation."""


class NotInjective(ValidationError):
    """A map required to be injective identifies two elements."""


class NotSurjective(ValidationError):
    """A map required to be surjective misses an element."""


class NotExact(ValidationError):
    """Kernel and image disagree in a would-be short exact sequence."""


class NotASection(ValidationError):
    """A claimed section does not project back to the identity map."""


class NotNormalInE(ValidationError):
    """A pushout kernel is not normal in the ambient middle group."""


class NotAnAction(ValidationError):
    """A family of maps fails to define a group action by automorphisms."""


class NotALift(ValidationError):
    """Two maps expected to lift the same projection do not."""


class DifferenceEscapesA(ValidationError):
    """A pointwise lift difference leaves the designated coefficient subgroup."""


class NotACocycle(ValidationError):
    """A value table violates the twisted multiplicativity rule."""


class NotACocycleForThisAction(ValidationError):
    """A cocycle's coefficient action does not match the required conjugation."""


class ActionMismatch(ValidationError):
    """A coefficient action does not factor the way an operation requires."""


class NotTrivialOnKernel(ValidationError):
    """A cocycle or action is nontrivial on the kernel it must descend along."""


class IncompatibleTower(ValidationError):
    """Tower levels or connecting maps do not commute with the structure maps."""


class BoundExceeded(ValidationError):
    """A corpus generation request exceeds the supported order bound."""


class ManifestSyntaxError(ValidationError):
    """A manifest line cannot be parsed; names the line number."""


class UnknownName(ValidationError):
    """A manifest line references a name that was never defined."""
