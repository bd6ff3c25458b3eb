"""Exception hierarchy.

The CLI maps these onto its exit codes: input problems (bad files, invalid
ideal data, zero ideals) exit 2, missing capabilities and exhausted budgets
exit 3.  Mathematical "no" verdicts are not errors.
"""


class SemicrossedError(Exception):
    """Base class for all library errors."""


class FormatError(SemicrossedError):
    """A system/ideal/series/witness file does not parse."""


class CarrierError(SemicrossedError):
    """A point lies outside the declared carrier of a finite system."""


class SystemMismatchError(SemicrossedError):
    """Two values built over different dynamical systems were combined."""


class CapabilityError(SemicrossedError):
    """The operation needs an oracle this system does not provide, or an
    oracle's finiteness guarantee fails on the given input."""


class IterationBudgetError(SemicrossedError):
    """An orbit walk exceeded its step budget without reaching a decision."""


class InvalidIdealError(SemicrossedError):
    """The level data does not describe an ideal (nesting/image condition
    or core/seed invariants fail)."""


class ZeroIdealError(SemicrossedError):
    """Decision procedures require a non-zero ideal."""


class NotCompactError(SemicrossedError):
    """M-ideal decisions require a compact (here: finite) carrier."""
