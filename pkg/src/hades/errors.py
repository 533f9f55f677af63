class HadesError(Exception):
    """Base class for all library errors."""


class ParameterMismatchError(HadesError, ValueError):
    """Operands were built under different rings or parameter sets."""


class ConfigurationError(HadesError, ValueError):
    """A requested engine or setting is incompatible with the parameters."""


class ParamsError(HadesError, ValueError):
    """One or more parameter invariants failed; ``violations`` lists them."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid parameters:\n  " + "\n  ".join(self.violations))


class PlaintextRangeError(HadesError, ValueError):
    pass


class NoiseOverflowError(HadesError, ArithmeticError):
    pass


class FlavorMismatchError(HadesError, ValueError):
    pass


class UnsupportedOperationError(HadesError, RuntimeError):
    pass


class FormatError(HadesError, ValueError):
    """A key or ciphertext file is malformed or carries the wrong tag."""
