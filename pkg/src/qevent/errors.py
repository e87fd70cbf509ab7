"""Exception hierarchy shared by every module.

Each family maps onto one CLI exit code, see :mod:`qevent.cli`.
"""


class QeventError(Exception):
    """Base class for all engine errors."""


class UsageError(QeventError):
    """Unknown flags or malformed command lines."""


class ParseError(QeventError):
    """A lattice/scenario file does not match its grammar."""


class ValidationError(QeventError):
    """A parsed structure fails semantic validation (axiom report attached)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MalformedInput(QeventError):
    """Ortho is not a bijection or the order relation is not a partial order."""


class ClosureFailure(QeventError):
    """A join of an orthogonal pair required by a subalgebra closure is missing."""


class SizeBound(QeventError):
    """A construction or search exceeds the configured size limit."""


class InconsistentInput(QeventError):
    """A declared transition arrow does not satisfy its frame equation."""


class NotAPartialOrder(QeventError):
    """The induced quotient order fails antisymmetry."""


class NonInjectiveCover(QeventError):
    """Cocycle conditions were requested for a non-injective cover."""


class IllDefined(QeventError):
    """Two equivalent pointed frames evaluate to different elements."""


class NotLocalized(QeventError):
    """An operation requires a covering ideal whose counit verdict is true."""


class ScenarioMismatch(QeventError):
    """A measurement scenario's designated elements do not correspond."""


class ZeroConditioningEvent(QeventError):
    """Conditioning on an event of zero probability."""
