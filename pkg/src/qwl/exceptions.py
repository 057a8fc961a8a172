"""Exception types shared across the toolkit."""


class QwlError(ValueError):
    """Base class for all toolkit errors."""


class ShapeError(QwlError):
    """Operand dimensions are incompatible."""


class DomainError(QwlError):
    """An argument lies outside the supported range."""


class ContractError(QwlError):
    """An input violates a numerical precondition (Hermiticity, unitarity, norm, ...)."""


class CapacityError(QwlError):
    """The requested problem size exceeds the configured resource cap."""


class UnderdeterminedError(QwlError):
    """Measurement data does not cover all bases required for reconstruction."""


class MatrixFormatError(QwlError):
    """A serialized matrix is malformed; ``position`` points at the offending entry."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position
