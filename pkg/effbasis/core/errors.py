"""Exception hierarchy shared by all effbasis layers."""


class EffbasisError(Exception):
    """Base class for every error raised by the package."""


class FcidumpParseError(EffbasisError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class HamiltonianValidationError(EffbasisError):
    pass


class DimensionError(EffbasisError):
    pass


class UnboundParameterError(EffbasisError):
    pass


class CircuitValidationError(EffbasisError):
    pass


class GraphError(EffbasisError):
    pass


class EigenSolverError(EffbasisError):
    pass


class LinearDependenceError(EigenSolverError):
    """Every overlap eigenvalue fell below the retention threshold."""


class OptimizationError(EffbasisError):
    pass


class KrylovError(EffbasisError):
    pass


class ConfigError(EffbasisError):
    pass


class VariationalBoundError(EffbasisError):
    """A computed energy fell below the stored exact reference."""
