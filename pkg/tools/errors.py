"""Exception types raised by the SEDF toolkit."""


class SedfToolError(ValueError):
    """Base class for all toolkit errors."""


class InvalidGroupError(SedfToolError):
    """Group factors are missing or smaller than 2."""


class InvalidElementError(SedfToolError):
    """Element coordinates or rank do not fit the group."""


class EmptySetError(SedfToolError):
    """A difference was requested on an empty set."""


class InvalidPolynomialError(SedfToolError):
    """Polynomial is not monic, has degree 0 or bad coefficients."""


class FieldConstructionError(SedfToolError):
    """Field tables cannot be built from the given modulus."""


class CapacityError(SedfToolError):
    """Requested size exceeds the configured table bound."""


class ZeroElementError(SedfToolError):
    """Operation is undefined for the zero field element."""


class IndexRangeError(SedfToolError):
    """Exponent or index outside its valid range."""


class DivisibilityError(SedfToolError):
    """Cyclotomic order does not divide q - 1."""


class UnsupportedParityError(SedfToolError):
    """Formula only implemented for an even class size."""


class ParameterError(SedfToolError):
    """Design parameters violate their bounds."""


class ShapeError(SedfToolError):
    """Sets of a family have unequal sizes."""


class PartitionError(SedfToolError):
    """Sets do not partition the required part of the group."""


class UniformityError(SedfToolError):
    """Partition members do not share the required PDS parameters."""


class SetLiteralError(SedfToolError):
    """A set, modulus or factor literal cannot be parsed."""


class WorkUnitError(SedfToolError):
    """An independent work unit failed or timed out."""
