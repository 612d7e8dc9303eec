"""Truncated Puiseux series over Q with valuation onto Lambda = Q.

An element is a finite descending list of (exponent, coefficient) terms plus a
floor: None means the element is exact; a rational floor f means an unknown
tail h with negval(h) <= f may exist. Stored exponents are strictly above the
floor, so the leading exponent (when terms exist) is the exact negval. The
distinguished element t (exponent 1) is infinite: t > r for every rational r.

All operations are pure; results are immutable.
"""

import math
from fractions import Fraction

from ..errors import (
    DuplicateExponent,
    NegativeInput,
    NotASquare,
    NotInRing,
    PrecisionError,
    SeriesSyntaxError,
)
from ._backend import kernel_add, kernel_mul
from .lam import BOTTOM, LambdaVal

LT, EQ, GT = -1, 0, 1


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class PuiseuxElem:
    __slots__ = ("terms", "floor")

    def __init__(self, terms, floor):
        # Assumes canonical data; use from_terms for raw input.
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "floor", floor)

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxElem is immutable")

    @classmethod
    def from_terms(cls, pairs, floor=None):
        """Build from (exponent, coefficient) pairs, combining duplicates."""
        acc = {}
        for e, c in pairs:
            e, c = _q(e), _q(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        floor = None if floor is None else _q(floor)
        terms = tuple(
            (e, acc[e])
            for e in sorted(acc.keys(), reverse=True)
            if acc[e] and (floor is None or e > floor)
        )
        return cls(terms, floor)

    @property
    def is_zero(self):
        return not self.terms and self.floor is None

    @property
    def is_exact(self):
        return self.floor is None

    def __eq__(self, other):
        if not isinstance(other, PuiseuxElem):
            if isinstance(other, (int, Fraction)):
                other = from_rational(other)
            else:
                return NotImplemented
        return self.terms == other.terms and self.floor == other.floor

    def __hash__(self):
        return hash((self.terms, self.floor))

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, neg(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), neg(self))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Only exact rational division; general inverses go through inv().
        if not isinstance(other, (int, Fraction)) or other == 0:
            raise TypeError("series division is only defined by nonzero rationals")
        return mul(self, from_rational(Fraction(1, 1) / other))

    def __lt__(self, other):
        return cmp(self, _coerce(other)) == LT

    def __le__(self, other):
        return cmp(self, _coerce(other)) != GT

    def __gt__(self, other):
        return cmp(self, _coerce(other)) == GT

    def __ge__(self, other):
        return cmp(self, _coerce(other)) != LT

    def __str__(self):
        return to_str(self)

    def __repr__(self):
        return f"PuiseuxElem({to_str(self)!r})"


def _coerce(x):
    if isinstance(x, PuiseuxElem):
        return x
    if isinstance(x, (int, Fraction)):
        return from_rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to PuiseuxElem")


def from_rational(q):
    q = _q(q)
    return PuiseuxElem(((Fraction(0), q),) if q else (), None)


def monomial(exp, coef=1):
    coef = _q(coef)
    if not coef:
        return ZERO
    return PuiseuxElem(((_q(exp), coef),), None)


def with_floor(a, f):
    """Widen a to floor at least f (interval semantics: coarser is honest)."""
    f = _q(f)
    if a.floor is not None and a.floor >= f:
        return a
    return PuiseuxElem(tuple(t for t in a.terms if t[0] > f), f)


def _negval_ub(a):
    """Upper bound for negval; None only for the exact zero."""
    if a.terms:
        return a.terms[0][0]
    return a.floor


def add(a, b):
    if a.floor is None:
        floor = b.floor
    elif b.floor is None:
        floor = a.floor
    else:
        floor = max(a.floor, b.floor)
    terms = kernel_add(a.terms, b.terms)
    if floor is not None:
        terms = tuple(t for t in terms if t[0] > floor)
    return PuiseuxElem(terms, floor)


def neg(a):
    return PuiseuxElem(tuple((e, -c) for e, c in a.terms), a.floor)


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if a.is_zero or b.is_zero:
        return ZERO
    if a.floor is None and b.floor is None:
        return PuiseuxElem(kernel_mul(a.terms, b.terms), None)
    ub_a, ub_b = _negval_ub(a), _negval_ub(b)
    floors = []
    if a.floor is not None:
        floors.append(a.floor + ub_b)
    if b.floor is not None:
        floors.append(b.floor + ub_a)
    floor = max(floors)
    terms = tuple(t for t in kernel_mul(a.terms, b.terms) if t[0] > floor)
    return PuiseuxElem(terms, floor)


def negval(a):
    if a.terms:
        return LambdaVal.of(a.terms[0][0])
    if a.floor is None:
        return BOTTOM
    raise PrecisionError(f"negval masked by floor {a.floor}")


def cmp(a, b):
    d = sub(a, b)
    if d.terms:
        return GT if d.terms[0][1] > 0 else LT
    if d.floor is None:
        return EQ
    raise PrecisionError(f"sign masked by floor {d.floor}")


def in_O(a):
    if a.terms:
        return a.terms[0][0] <= 0
    if a.floor is None or a.floor <= 0:
        return True
    raise PrecisionError(f"membership in O masked by floor {a.floor}")


def is_unit(a):
    if a.terms:
        return a.terms[0][0] == 0
    if a.floor is None or a.floor < 0:
        return False
    raise PrecisionError(f"unit test masked by floor {a.floor}")


def residue(a):
    if not in_O(a):
        raise NotInRing("residue requires an element of O")
    if a.floor is not None and a.floor >= 0:
        raise PrecisionError(f"t^0 coefficient masked by floor {a.floor}")
    for e, c in a.terms:
        if e == 0:
            return c
    return Fraction(0)


def _lattice_step(a, halved=False):
    """Smallest exponent spacing the result can live on."""
    den = math.lcm(*(e.denominator for e, _ in a.terms))
    if halved:
        den *= 2
    return Fraction(1, den)


def inv(a, target_floor):
    """Multiplicative inverse; every exponent >= target_floor is computed and
    the result floor sits one lattice step below target_floor."""
    target_floor = _q(target_floor)
    if not a.terms:
        if a.floor is None:
            raise ZeroDivisionError("inverse of zero")
        raise PrecisionError(f"leading term masked by floor {a.floor}")
    e, c = a.terms[0]
    lead_inv = monomial(-e, Fraction(1, 1) / c)
    rest = PuiseuxElem(a.terms[1:], a.floor)
    if rest.is_zero:
        return lead_inv
    if a.floor is not None and a.floor - 2 * e > target_floor:
        raise PrecisionError("floor of operand too coarse for requested precision")
    # a = c t^e (1 + r); 1/a = lead_inv * sum (-r)^k, negval(r) < 0.
    neg_r = neg(mul(lead_inv, rest))
    cutoff = target_floor + e
    s = ONE
    p = ONE
    while True:
        p = mul(p, neg_r)
        ub = _negval_ub(p)
        if ub is None or ub < cutoff:
            break
        s = add(s, p)
    return with_floor(mul(lead_inv, s), target_floor - _lattice_step(a))


def _sqrt_rational(q):
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise NotASquare(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


def sqrt_pos(a, target_floor=None):
    """Square root of a positive element, binomial expansion to target_floor.
    target_floor may be omitted only when a is an exact monomial."""
    if cmp(a, ZERO) != GT:
        raise NegativeInput("sqrt_pos requires a positive element")
    e, c = a.terms[0]
    s0 = _sqrt_rational(c)
    lead = monomial(e / 2, s0)
    rest = PuiseuxElem(a.terms[1:], a.floor)
    if rest.is_zero:
        return lead
    if target_floor is None:
        raise TypeError("target_floor is required for non-monomial input")
    target_floor = _q(target_floor)
    if a.floor is not None and a.floor - e / 2 > target_floor:
        raise PrecisionError("floor of operand too coarse for requested precision")
    # a = c t^e (1 + r); sqrt = lead * sum binom(1/2, k) r^k.
    r = mul(monomial(-e, Fraction(1, 1) / c), rest)
    cutoff = target_floor - e / 2
    s = ONE
    p = ONE
    coef = Fraction(1)
    k = 0
    while True:
        coef = coef * (Fraction(1, 2) - k) / (k + 1)
        k += 1
        p = mul(p, r)
        ub = _negval_ub(p)
        if ub is None or ub < cutoff:
            break
        s = add(s, mul(from_rational(coef), p))
    return with_floor(mul(lead, s), target_floor - _lattice_step(a, halved=True))


# --- canonical text form ---------------------------------------------------


def _fmt_exp(e):
    if e == 1:
        return "t"
    if e.denominator == 1 and e >= 2:
        return f"t^{e}"
    return f"t^({e})"


def to_str(a):
    parts = []
    for e, c in a.terms:
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = _fmt_exp(e)
        else:
            body = f"{mag}*{_fmt_exp(e)}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        text = "0"
    else:
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
    if a.floor is not None:
        text += f" + O(t^({a.floor}))"
    return text


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, literal):
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.take(literal):
            raise SeriesSyntaxError(f"expected {literal!r}", self.pos)

    def parse_int(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise SeriesSyntaxError("expected an integer", start)
        return int(self.text[start : self.pos])

    def parse_rat(self):
        num = self.parse_int()
        if self.take("/"):
            start = self.pos
            den = self.parse_int()
            if den <= 0:
                raise SeriesSyntaxError("denominator must be positive", start)
            return Fraction(num, den)
        return Fraction(num)


def _parse_tpow(sc):
    sc.expect("t")
    if sc.take("^"):
        if sc.take("("):
            e = sc.parse_rat()
            sc.expect(")")
        else:
            e = Fraction(sc.parse_int())
        return e
    return Fraction(1)


def _parse_term(sc):
    if sc.peek() == "t":
        return _parse_tpow(sc), Fraction(1)
    coef = sc.parse_rat()
    if sc.take("*"):
        return _parse_tpow(sc), coef
    return Fraction(0), coef


def parse(text):
    """Parse series text.  Accepts the grammar plus a leading sign, which the
    canonical printer emits for a negative leading coefficient."""
    sc = _Scanner(text)
    seen = {}
    floor = None

    def record(e, c, where):
        if e in seen:
            raise DuplicateExponent(f"exponent {e} appears twice", where)
        seen[e] = c

    sign = -1 if sc.take("-") else 1
    if sign == 1:
        sc.take("+")
    where = sc.pos
    e, c = _parse_term(sc)
    record(e, sign * c, where)
    while not sc.at_end():
        if sc.take("+"):
            sign = 1
        elif sc.take("-"):
            sign = -1
        else:
            raise SeriesSyntaxError("expected '+' or '-'", sc.pos)
        if sign == 1 and sc.take("O("):
            sc.expect("t^(")
            floor = sc.parse_rat()
            sc.expect(")")
            sc.expect(")")
            if not sc.at_end():
                raise SeriesSyntaxError("text after O(...) tail", sc.pos)
            break
        where = sc.pos
        e, c = _parse_term(sc)
        record(e, sign * c, where)
    return PuiseuxElem.from_terms(seen.items(), floor)


ZERO = PuiseuxElem((), None)
ONE = from_rational(1)
T = monomial(1)
