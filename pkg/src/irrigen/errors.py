"""Exception and warning types shared across the package."""


class NumericalError(ArithmeticError):
    """A computation produced an unusable numerical state."""


class StepRejected(NumericalError):
    """An explicit update would drive a strictly positive quantity to <= 0."""


class NonFiniteOrbitError(NumericalError):
    """An orbit left the finite reals before the requested horizon."""


class DiagnosticWarning(UserWarning):
    """Non-fatal numerical diagnostic (truncation, rejected samples, drift)."""
