"""Exception types shared across the package."""


class PrecisionError(ArithmeticError):
    """A truncation floor masks information the operation needs."""


class SeriesSyntaxError(ValueError):
    """Series text does not match the grammar; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class DuplicateExponent(SeriesSyntaxError):
    """The same exponent appears twice in series text."""


class NotInRing(ValueError):
    """Element is not in the valuation ring O."""


class NotASquare(ValueError):
    """Leading coefficient is not the square of a rational."""


class NegativeInput(ValueError):
    """sqrt_pos requires a positive element."""


class NotARoot(ValueError):
    """Vector is not a root of the system."""


class EnumerationBound(RuntimeError):
    """Generic root/Weyl enumeration exceeded its safety bound."""


class UnsupportedConstraint(ValueError):
    """Constraint is not in SL(n) difference form."""


class NotUnipotent(ValueError):
    """Matrix is not upper unipotent."""


class IdentityElement(ValueError):
    """Operation undefined for the identity root element."""


class AmbiguousWeyl(RuntimeError):
    """No single optimal permutation's region covered the overlap sample."""


class ConfigError(ValueError):
    """Invalid harness configuration."""
