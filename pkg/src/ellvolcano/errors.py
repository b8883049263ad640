"""Exception hierarchy.

Errors are grouped by the kind of failure so the CLI can map them to
exit codes: bad user input, a violated mathematical precondition, or an
exhausted resource budget.
"""


class VolcanoError(Exception):
    """Base class for all library errors."""


class InputError(VolcanoError):
    """Malformed or inconsistent user-supplied data."""


class MathError(VolcanoError):
    """A mathematical precondition does not hold for the given input."""


class ResourceError(VolcanoError):
    """An internal retry or size budget was exhausted."""


# --- field arithmetic ---

class NonPrime(InputError):
    pass


class BadCharacteristic(InputError):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class ContextMismatch(InputError):
    pass


class BadInput(InputError):
    pass


class NotInSubgroup(MathError):
    pass


# --- curves ---

class SingularCurve(InputError):
    pass


class SpecialJInvariant(InputError):
    pass


class BadTrace(InputError):
    pass


class Supersingular(InputError):
    pass


class NoMatchingTwist(InputError):
    pass


class FieldTooLarge(ResourceError):
    pass


class UnfactorableDiscriminant(ResourceError):
    pass


# --- pairings ---

class DivisorSupportHit(VolcanoError):
    """A Miller line or vertical vanished at an evaluation point.

    Callers re-randomize the auxiliary point and retry.
    """


class BadOrder(MathError):
    pass


class EmbeddingDegree(MathError):
    pass


class RandomnessExhausted(ResourceError):
    pass


# --- isogenies ---

class BadKernel(InputError):
    pass


class KernelNotRational(MathError):
    pass


class ParseError(InputError):
    pass


class WrongLevel(InputError):
    pass


# --- volcano navigation ---

class NeedExtension(MathError):
    pass


class NeedTwist(MathError):
    pass


class Degenerate(MathError):
    pass


class AboveSecondStability(MathError):
    pass


class FloorCurve(MathError):
    pass


class NotOnCrater(MathError):
    pass


class RampartSingleton(MathError):
    pass


class TrivialVolcano(MathError):
    pass


class NeedsModPoly(MathError):
    pass
