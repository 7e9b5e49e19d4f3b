class DomainError(ValueError):
    """An input lies outside the domain of a model (e.g. no usable spectrum)."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge."""


class SimulationError(RuntimeError):
    """The simulator hit its hard slot cap before meeting the stopping rule."""
