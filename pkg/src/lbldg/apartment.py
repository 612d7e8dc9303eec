"""The model apartment: Span(roots) tensor Lambda with norm, metric, walls,
affine Weyl action, and feasibility of finite half-space intersections.

Coordinates are payloads of LambdaVal (Fraction or LexPair) in the simple-root
basis. For type A there is an alternate mu-view: mu in Lambda^n with sum 0,
where the root alpha_{ij} evaluates to mu_i - mu_j. The spherical part of an
affine Weyl element built from a mu-view permutation sigma acts by
nu_i = mu_{sigma(i)}.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import UnsupportedConstraint
from .rootsys import WeylElem, positive_roots, weyl_from_perm
from .valfield.lam import LambdaVal

PLUS, MINUS = 1, -1


def _pay(x):
    return x.finite_value if isinstance(x, LambdaVal) else LambdaVal.of(x).finite_value


def _zero_like(payload):
    return payload * 0


class ApartmentVec:
    """Point of the model apartment in simple-root coordinates."""

    __slots__ = ("rs", "coords")

    def __init__(self, rs, coords):
        self.rs = rs
        self.coords = tuple(_pay(c) for c in coords)
        if len(self.coords) != rs.rank:
            raise ValueError("coordinate length must equal the rank")

    @classmethod
    def zero(cls, rs):
        return cls(rs, [Fraction(0)] * rs.rank)

    @classmethod
    def from_mu(cls, rs, mu):
        """Type A view: mu in Lambda^{n+1} with exact sum zero."""
        if rs.kind[0] != "TypeA":
            raise UnsupportedConstraint("mu-view requires a type A system")
        mu = [_pay(m) for m in mu]
        if len(mu) != rs.rank + 1:
            raise ValueError("mu-view length must be rank + 1")
        total = mu[0]
        for m in mu[1:]:
            total = total + m
        if total != _zero_like(total):
            raise ValueError("mu coordinates must sum to zero")
        coords = []
        acc = _zero_like(mu[0])
        for k in range(rs.rank):
            acc = acc + mu[k]
            coords.append(acc)
        return cls(rs, coords)

    def to_mu(self):
        if self.rs.kind[0] != "TypeA":
            raise UnsupportedConstraint("mu-view requires a type A system")
        lam = self.coords
        z = _zero_like(lam[0])
        out = [lam[0]]
        for k in range(1, self.rs.rank):
            out.append(lam[k] - lam[k - 1])
        out.append(z - lam[-1])
        return tuple(out)

    def __add__(self, other):
        return ApartmentVec(self.rs, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return ApartmentVec(self.rs, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ApartmentVec(self.rs, [-a for a in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ApartmentVec):
            return NotImplemented
        return self.rs == other.rs and self.coords == other.coords

    def __hash__(self):
        return hash((self.rs, self.coords))

    def __repr__(self):
        return f"ApartmentVec({list(self.coords)})"


class HalfApartment(NamedTuple):
    root: object
    threshold: LambdaVal
    sign: int = PLUS


class WConvexSet(NamedTuple):
    rs: object
    constraints: tuple


class AffineWeylElem(NamedTuple):
    """x -> translation + spherical(x); mu_perm records the type A mu-view
    permutation when the element was built from one."""

    translation: object
    spherical: WeylElem
    mu_perm: tuple = None


def b_ext(x, alpha):
    """Pairing of an apartment point against a root, valued in Lambda."""
    rs = x.rs
    alpha = rs.root_from_vec(alpha.vec) if hasattr(alpha, "vec") else rs.root_from_vec(alpha)
    n = rs.rank
    weights = [sum(rs.cartan[j][k] * alpha.covec[k] for k in range(n)) for j in range(n)]
    acc = _zero_like(x.coords[0])
    for j in range(n):
        if weights[j]:
            acc = acc + x.coords[j] * weights[j]
    return LambdaVal(acc)


def norm(x):
    """Sum of |b_ext| over the positive roots; the W_s-invariant norm."""
    acc = _zero_like(x.coords[0])
    for alpha in sorted(positive_roots(x.rs)):
        acc = acc + abs(b_ext(x, alpha).finite_value)
    return LambdaVal(acc)


def dist(x, y):
    return norm(x - y)


def in_half(h, x):
    b = b_ext(x, h.root)
    if h.threshold.is_bottom:
        return h.sign == PLUS
    return b >= h.threshold if h.sign == PLUS else b <= h.threshold


def on_wall(alpha, ell, x):
    return b_ext(x, alpha) == (ell if isinstance(ell, LambdaVal) else LambdaVal.of(ell))


def in_chamber_C0(x):
    z = LambdaVal(_zero_like(x.coords[0]))
    return all(b_ext(x, d) >= z for d in x.rs.basis)


def in_wconvex(s, x):
    return all(in_half(h, x) for h in s.constraints)


def cochar_point(rs, beta, lam):
    """Image of lam under the cocharacter of beta: coordinates lam * covec."""
    lam = _pay(lam)
    return ApartmentVec(rs, [lam * c for c in beta.covec])


# --- affine Weyl group -------------------------------------------------------


def identity_weyl(rs):
    n = rs.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return AffineWeylElem(ApartmentVec.zero(rs), WeylElem(ident, ident), None)


def _inv_perm(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


def affine_from_mu(rs, sigma, c_mu):
    """Type A affine element acting on the mu-view by
    nu_i = c_i + mu_{sigma(i)}."""
    spherical = weyl_from_perm(rs, _inv_perm(tuple(sigma)))
    return AffineWeylElem(ApartmentVec.from_mu(rs, c_mu), spherical, tuple(sigma))


def affine_reflection(rs, alpha, ell):
    """Affine reflection in the wall {b_ext(., alpha) = ell}."""
    alpha = rs.root_from_vec(alpha.vec)
    ell = _pay(ell)
    n = rs.rank
    w = [sum(rs.cartan[j][k] * alpha.covec[k] for k in range(n)) for j in range(n)]
    mat = tuple(
        tuple(int(k == j) - alpha.vec[k] * w[j] for j in range(n)) for k in range(n)
    )
    cw = [sum(alpha.vec[j] * rs.cartan[j][k] for j in range(n)) for k in range(n)]
    comat = tuple(
        tuple(int(k == j) - alpha.covec[k] * cw[j] for j in range(n)) for k in range(n)
    )
    trans = ApartmentVec(rs, [ell * v for v in alpha.vec])
    return AffineWeylElem(trans, WeylElem(mat, comat), None)


def apply_weyl(w, x):
    n = x.rs.rank
    m = w.spherical.matrix
    coords = []
    for i in range(n):
        acc = _zero_like(x.coords[0])
        for j in range(n):
            if m[i][j]:
                acc = acc + x.coords[j] * m[i][j]
        coords.append(acc + w.translation.coords[i])
    return ApartmentVec(x.rs, coords)


def compose_weyl(w1, w2):
    """Element acting as w1 after w2."""
    rs = w1.translation.rs
    a, b = w1.spherical, w2.spherical
    n = rs.rank
    mat = tuple(
        tuple(sum(a.matrix[i][k] * b.matrix[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    comat = tuple(
        tuple(sum(a.comatrix[i][k] * b.comatrix[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    trans = w1.translation + apply_weyl(
        AffineWeylElem(ApartmentVec.zero(rs), a, None), w2.translation
    )
    perm = None
    if w1.mu_perm and w2.mu_perm:
        s1, s2 = w1.mu_perm, w2.mu_perm
        perm = tuple(s2[s1[i] - 1] for i in range(len(s1)))
    return AffineWeylElem(trans, WeylElem(mat, comat), perm)


# --- feasibility -------------------------------------------------------------


def _difference_form(s):
    """Constraints as (i, j, ell payload): mu_i - mu_j >= ell.  Type A only."""
    rs = s.rs
    if rs.kind[0] != "TypeA":
        raise UnsupportedConstraint("difference form requires a type A system")
    out = []
    for h in s.constraints:
        if h.threshold.is_bottom:
            if h.sign == MINUS:
                raise UnsupportedConstraint("Minus half-apartment with Bottom threshold")
            continue
        i, j = rs.label_of(h.root)
        ell = h.threshold.finite_value
        if h.sign == PLUS:
            out.append((i, j, ell))
        else:
            out.append((j, i, -ell))
    return out


def wconvex_witness(s):
    """A satisfying mu with sum zero, or None.  Bellman-Ford potentials on the
    difference-constraint graph, shifted to sum zero."""
    cons = sorted(_difference_form(s), key=lambda c: (c[0], c[1], c[2]))
    m = s.rs.rank + 1
    if not cons:
        return tuple(Fraction(0) for _ in range(m))
    z = _zero_like(cons[0][2])
    d = [z] * m
    # edge i -> j with weight -ell encodes mu_j <= mu_i - ell
    for _ in range(m - 1):
        changed = False
        for i, j, ell in cons:
            cand = d[i - 1] - ell
            if cand < d[j - 1]:
                d[j - 1] = cand
                changed = True
        if not changed:
            break
    for i, j, ell in cons:
        if d[i - 1] - ell < d[j - 1]:
            return None
    total = d[0]
    for v in d[1:]:
        total = total + v
    shift = total / m
    return tuple(v - shift for v in d)


def wconvex_feasible(s):
    return wconvex_witness(s) is not None


# --- JSON --------------------------------------------------------------------


def wconvex_to_json(s):
    out = []
    for i, j, ell in _difference_form(s):
        if not isinstance(ell, Fraction):
            raise UnsupportedConstraint("JSON form requires rational thresholds")
        out.append({"i": i, "j": j, "ell": str(ell)})
    return out


def wconvex_from_json(rs, data):
    cons = []
    for item in data:
        i, j = int(item["i"]), int(item["j"])
        ell = Fraction(str(item["ell"]))
        cons.append(HalfApartment(rs.alpha(i, j), LambdaVal.of(ell), PLUS))
    return WConvexSet(rs, tuple(cons))
