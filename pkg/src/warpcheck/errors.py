"""Exception taxonomy shared by the whole engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error the engine raises deliberately."""


class ExprSyntaxError(EngineError):
    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"syntax error at position {position}: expected {expected}")


class UnknownSymbolError(EngineError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        self.position = position
        at = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown symbol '{name}'{at}")


class ArityError(EngineError):
    def __init__(self, name: str, detail: str = "expects exactly one argument"):
        self.name = name
        super().__init__(f"{name} {detail}")


class DomainError(EngineError):
    """Point outside the domain of definition (log, sqrt, division, pow)."""


class SingularMetricError(EngineError):
    def __init__(self, det: float):
        self.det = det
        super().__init__(f"metric is numerically singular (|det| = {abs(det):.3e})")


class EmptyDomainError(EngineError):
    """Sampling interval collapses after the margin shrink."""


class NameClashError(EngineError):
    """Base and fiber charts share a coordinate name."""


class NonPositiveWarpingError(EngineError):
    def __init__(self, point, value: float):
        self.point = point
        self.value = value
        super().__init__(f"warping function is {value:g} <= 0 at {point}")


class SignatureError(EngineError):
    """Chart does not have the metric signature an operation requires."""


class HypothesisFailedError(EngineError):
    """A suite's hypothesis does not hold, so its conclusion is not asserted."""

    def __init__(self, detail: str, max_residual: float):
        self.max_residual = max_residual
        super().__init__(f"{detail} (max residual {max_residual:.3e})")


class ScenarioParseError(EngineError):
    def __init__(self, path: str, detail: str):
        self.path = path
        super().__init__(f"{path}: {detail}")


class ScenarioValidationError(EngineError):
    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        super().__init__(f"scenario object '{name}': {reason}")
