"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/feasibility/aliasing problems
are configuration errors (exit 3), while a failed verdict is a defect (exit 2).
"""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class FeasibilityError(ParameterError):
    """A threshold condition on the exponents (mu, mu', alpha, ...) is violated."""


class KernelError(ParameterError):
    """A convolution kernel does not satisfy the requested hypotheses."""


class GridError(ValueError):
    """Grids are incompatible or malformed."""


class AliasingError(ValueError):
    """A sampled signal carries too much mass near the grid boundary."""


class ConventionError(RuntimeError):
    """A calibration constant is not constant across the grid; indicates a bug."""
