"""The value group Lambda with bottom element.

A LambdaVal is Finite(payload) or Bottom, where Bottom is the (-v)-image of 0
and behaves as -infinity: absorbing under addition, below every finite value.
Two payload instances are provided: Rat (Fraction) and LexPair (Fraction pairs
under lexicographic order). Only Rat backs the Puiseux field; LexPair serves
the apartment and root-system operations.
"""

from fractions import Fraction
from functools import total_ordering


@total_ordering
class LexPair:
    """Q x Q with lexicographic order and componentwise group operations."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("LexPair is immutable")

    def __add__(self, other):
        if not isinstance(other, LexPair):
            return NotImplemented
        return LexPair(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if not isinstance(other, LexPair):
            return NotImplemented
        return LexPair(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return LexPair(-self.a, -self.b)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return LexPair(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, int) or k <= 0:
            raise ValueError("LexPair division requires a positive integer")
        return LexPair(self.a / k, self.b / k)

    def __abs__(self):
        return -self if (self.a, self.b) < (0, 0) else self

    def __eq__(self, other):
        if not isinstance(other, LexPair):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        if not isinstance(other, LexPair):
            return NotImplemented
        return (self.a, self.b) < (other.a, other.b)

    def __hash__(self):
        return hash((LexPair, self.a, self.b))

    def __repr__(self):
        return f"LexPair({self.a}, {self.b})"


def _coerce_payload(x):
    if isinstance(x, (LexPair, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"unsupported Lambda payload: {type(x).__name__}")


@total_ordering
class LambdaVal:
    """Finite(payload) | Bottom.  Immutable."""

    __slots__ = ("payload",)

    def __init__(self, payload):
        # payload None encodes Bottom; use LambdaVal.of / BOTTOM instead.
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("LambdaVal is immutable")

    @classmethod
    def of(cls, x):
        return cls(_coerce_payload(x))

    @property
    def is_bottom(self):
        return self.payload is None

    @property
    def finite_value(self):
        if self.payload is None:
            raise ValueError("Bottom has no finite value")
        return self.payload

    def __add__(self, other):
        if not isinstance(other, LambdaVal):
            return NotImplemented
        if self.payload is None or other.payload is None:
            return BOTTOM
        return LambdaVal(self.payload + other.payload)

    def __sub__(self, other):
        if not isinstance(other, LambdaVal):
            return NotImplemented
        if other.payload is None:
            raise ValueError("cannot subtract Bottom")
        if self.payload is None:
            return BOTTOM
        return LambdaVal(self.payload - other.payload)

    def __neg__(self):
        if self.payload is None:
            raise ValueError("cannot negate Bottom")
        return LambdaVal(-self.payload)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if self.payload is None:
            if k > 0:
                return BOTTOM
            raise ValueError("Bottom only scales by positive integers")
        return LambdaVal(self.payload * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, int) or k <= 0:
            raise ValueError("division requires a positive integer")
        if self.payload is None:
            return BOTTOM
        return LambdaVal(self.payload / k)

    def __abs__(self):
        if self.payload is None:
            raise ValueError("Bottom has no absolute value")
        return LambdaVal(abs(self.payload))

    def __eq__(self, other):
        if not isinstance(other, LambdaVal):
            return NotImplemented
        return self.payload == other.payload

    def __lt__(self, other):
        if not isinstance(other, LambdaVal):
            return NotImplemented
        if self.payload is None:
            return other.payload is not None
        if other.payload is None:
            return False
        return self.payload < other.payload

    def __hash__(self):
        return hash((LambdaVal, self.payload))

    def __repr__(self):
        return "Bottom" if self.payload is None else f"Finite({self.payload})"


BOTTOM = LambdaVal(None)
ZERO = LambdaVal.of(0)
