"""Exception classes for arrduality."""


class ArrDualityError(Exception):
    """Base exception for all arrduality errors."""
    pass


class ConfigurationError(ArrDualityError):
    """Raised when configuration is invalid or missing."""
    pass


class ParseError(ArrDualityError):
    """Raised when an arrangement or toric input file is malformed."""
    def __init__(self, message: str, line: int = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateArrangementError(ArrDualityError):
    """Raised for zero normals, repeated hyperplanes or non-primitive exponents."""
    pass


class FieldError(ArrDualityError):
    """Raised when a modulus is not an admissible prime or a character is invalid."""
    pass


class RestrictionError(ArrDualityError):
    """Raised when restricting to a flat or layer with no ambient room left."""
    pass


class BuildingSetError(ArrDualityError):
    """Raised when a family of flats fails the building-set decomposition."""
    pass


class NotNestedError(ArrDualityError):
    """Raised when a set of flats is not nested for the building set in use."""
    pass


class DualityDimensionError(ArrDualityError):
    """Raised for invalid duality-dimension requests."""
    pass


class OrbitSpecError(ArrDualityError):
    """Raised when an orbit configuration spec violates its invariants."""
    pass


class ArrangementTooLargeError(ArrDualityError):
    """Raised when an arrangement exceeds the configured desk-scale bounds."""
    pass


class NotComplexifiedRealError(ArrDualityError):
    """Raised when a real-structure computation is asked of a non-real arrangement."""
    pass
