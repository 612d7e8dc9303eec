"""Two boundaries of the building, both exposed as predicates.

The residue side reduces base-point stabilizer elements entrywise to their
t^0 coefficients.  Over our representable subfield those coefficients are
plain rationals, so the residue group is SL(n, Q) and germs of sectors based
at the base point are classified by its upper-triangular subgroup: two
sectors share a germ exactly when the residue of the transition element is
upper triangular.

The side at infinity classifies sectors up to parallelism.  A chart and the
standard sector point the same way exactly when the transition element is
upper triangular over the series field itself (entries below the diagonal
exactly zero).

Both predicates come with sampling oracles that probe actual points of the
building through chart_image, so tests can confront the matrix-shape
characterizations with the geometry they claim to summarize.
"""

from fractions import Fraction
from typing import NamedTuple

from . import linalg
from .apartment import ApartmentVec
from .building import _provably_zero, chart_image, stab_o, trop
from .errors import NotInRing
from .rootsys import type_A
from .symspace import GroupElem
from .valfield import series as fs

# germ sampling radii, largest first; the sampled germ relation is an
# existential over these (a germ is an agreement on SOME small ball)
GERM_RADII = (Fraction(1), Fraction(1, 2), Fraction(1, 4))

# rungs per ray: each radius is probed at these fractions of itself
GERM_LADDER = (Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5), Fraction(1))


class ResidueElem(NamedTuple):
    """Element of SL(n, Q), the reduction of a base-point stabilizer."""

    entries: tuple

    @classmethod
    def from_rows(cls, rows, validate=True):
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if validate and linalg.det([list(r) for r in entries]) != 1:
            raise ValueError("residue matrix must have determinant 1")
        return cls(entries)

    @classmethod
    def identity(cls, n):
        return cls.from_rows(linalg.identity(n), validate=False)

    @property
    def n(self):
        return len(self.entries)

    def __matmul__(self, other):
        rows = linalg.mat_mul([list(r) for r in self.entries], [list(r) for r in other.entries])
        return ResidueElem.from_rows(rows, validate=False)

    def inverse(self):
        return ResidueElem.from_rows(linalg.mat_inv([list(r) for r in self.entries]), validate=False)

    def is_upper(self):
        return all(
            self.entries[i][j] == 0 for i in range(self.n) for j in range(i)
        )

    def lift(self):
        """The same matrix as a group element with constant entries."""
        return GroupElem(
            [[fs.from_rational(x) for x in row] for row in self.entries],
            validate=False,
        )


class SectorGerm(NamedTuple):
    """Germ at the base point of g applied to the standard sector."""

    g: GroupElem


class SectorAtInfinity(NamedTuple):
    """Parallelism class of g applied to the standard sector."""

    g: GroupElem


def reduce(g):
    """Entrywise t^0 coefficient of a base-point stabilizer element."""
    if not stab_o(g):
        raise NotInRing("reduction requires all entries in O")
    return ResidueElem.from_rows(
        [[fs.residue(e) for e in row] for row in g.entries], validate=False
    )


def germ_equal(s1, s2):
    """Whether two sectors based at o agree on some ball around o.

    Operationally: the reduction of the transition element is upper
    triangular, i.e. lies in the Borel subgroup of the residue group,
    which is exactly the germ stabilizer of the standard sector.
    """
    b = s2.g.inverse() @ s1.g
    return reduce(b).is_upper()


def chamber_rays(n):
    """A fixed set of interior chamber directions with coordinate 1-norm 1."""
    gap_rows = [(Fraction(1),) * (n - 1)]
    if n > 2:
        gap_rows.append((Fraction(2),) + (Fraction(1),) * (n - 2))
        gap_rows.append((Fraction(1),) * (n - 2) + (Fraction(2),))
    rays = []
    for gaps in gap_rows:
        mu = [Fraction(0)]
        for gap in reversed(gaps):
            mu.insert(0, mu[0] + gap)
        mean = sum(mu) / n
        mu = [x - mean for x in mu]
        scale = sum(abs(x) for x in mu)
        rays.append(tuple(x / scale for x in mu))
    return tuple(rays)


def sampled_germ_equal(s1, s2, radii=GERM_RADII):
    """Point-sampling oracle for the germ relation.

    For each radius, the transition element is tested on a ladder of
    interior chamber points with coordinate 1-norm at most that radius;
    the germ relation holds when some radius is agreed on completely.

    Both verdicts match the reduction predicate on elements whose
    below-residue parts have negvals on the half-integer lattice: such a
    transition element factors as a rational upper-triangular matrix
    (fixing every interior point near o) times a reduction-kernel element
    (fixing everything with coordinate gaps below 1/2, which covers the
    smallest radius); conversely a nonzero below-diagonal residue entry
    has negval 0, which exceeds mu_i - mu_j on every interior point, so
    every sampled point moves at every radius.
    """
    b = s2.g.inverse() @ s1.g
    if not stab_o(b):
        raise NotInRing("sampled germs require base charts in O")
    rs = type_A(b.n - 1)
    rays = chamber_rays(b.n)
    for eps in radii:
        agreed = True
        for ray in rays:
            for rung in GERM_LADDER:
                mu = ApartmentVec.from_mu(rs, [eps * rung * x for x in ray])
                if chart_image(b, mu) != mu:
                    agreed = False
                    break
            if not agreed:
                break
        if agreed:
            return True
    return False


def infinity_equal(c1, c2):
    """Whether two charts point at the same sector at infinity.

    Operationally: the transition element is upper triangular over the
    series field, i.e. every entry below the diagonal is exactly zero.
    """
    b = c2.g.inverse() @ c1.g
    return all(
        _provably_zero(b.entries[i][j]) for i in range(b.n) for j in range(i)
    )


def _deep_direction(n):
    """Strictly dominant direction whose index multisets have unique sums.

    Coordinates are the powers (n+1)^(n-1), ..., (n+1), 1 recentered to sum
    zero.  Any way of drawing n coordinates with repetition sums to zero
    only if each index is drawn exactly once: the draw counts are base-n+1
    digits of the total, and digit strings are unique.
    """
    powers = [Fraction((n + 1) ** (n - 1 - i)) for i in range(n)]
    mean = sum(powers) / n
    return [p - mean for p in powers]


def sampled_infinity_equal(c1, c2, samples=3):
    """Deep-point sampling oracle for parallelism.

    The transition element is applied to points far out in the standard
    sector; the charts agree at infinity exactly when every sampled point
    lands back in the model apartment shifted by one fixed translation.

    The sample is decisive, not heuristic.  Points are (r0 + k) times a
    strictly dominant direction with pairwise gaps at least r0, and r0
    exceeds twice any finite negval of the transition element, so in each
    row of the membership computation the leftmost finite entry dominates
    outright.  Membership at two different depths then forces the leftmost
    finite entries to sit at positions summing like a permutation (the
    direction's coordinate sums are multiset-unique), and a depth-constant
    shift forces that permutation to be the identity, i.e. nothing finite
    below the diagonal.  Conversely an upper-triangular transition element
    translates deep points by its diagonal negvals.
    """
    b = c2.g.inverse() @ c1.g
    T = trop(b)
    bound = Fraction(0)
    for row in T:
        for v in row:
            if not v.is_bottom and abs(v.payload) > bound:
                bound = abs(v.payload)
    r0 = 2 * b.n * (1 + bound)
    rs = type_A(b.n - 1)
    rho = _deep_direction(b.n)
    shift = None
    for k in range(samples):
        mu = ApartmentVec.from_mu(rs, [(r0 + k) * x for x in rho])
        nu = chart_image(b, mu)
        if nu is None:
            return False
        delta = tuple(a - c for a, c in zip(nu.to_mu(), mu.to_mu()))
        if shift is None:
            shift = delta
        elif delta != shift:
            return False
    return True


def transitivity_witness(s1, s2):
    """Residue-group element carrying the first germ to the second.

    Solved in SL(n, Q) by Gaussian elimination: h = r2 r1^(-1) maps the
    first sector's germ to the second's, since the transition residue it
    induces is the identity, which is upper triangular.
    """
    r1 = reduce(s1.g)
    r2 = reduce(s2.g)
    h = r2 @ r1.inverse()
    if not (r2.inverse() @ h @ r1).is_upper():
        raise AssertionError("witness failed the Borel check")
    return h


def kernel_fix_radius(g):
    """Radius around the base point fixed by a reduction-kernel element.

    Returns None for the exact identity (every radius works).  Otherwise
    all entries of g - Id must have negative negval; with delta their
    common depth, the fixed radius is delta / (n - 1).

    The constant comes from the diagonal subgroup: if a positive diagonal
    determinant-one matrix has all consecutive-gap negvals at most lam,
    its entry negvals are at most lam (n - 1)/2, because with x_i the
    diagonal negvals, summing x_1 - x_j <= (j - 1) lam over j against
    sum x_j = 0 gives x_1 <= lam (n - 1)/2, and the arithmetic staircase
    attains it.  A point within distance lam of the base point has a
    Cartan representative with entry negvals at most lam (n - 1)/2 on both
    sides, so conjugating g - Id by it keeps every entry in the maximal
    ideal whenever its depth exceeds lam (n - 1).
    """
    deepest = None
    for i in range(g.n):
        for j in range(g.n):
            e = g.entries[i][j]
            if i == j:
                e = fs.add(e, fs.neg(fs.ONE))
            v = fs.negval(e)
            if v.is_bottom:
                continue
            if v.payload >= 0:
                raise ValueError("reduction is not the identity")
            if deepest is None or -v.payload < deepest:
                deepest = -v.payload
    if deepest is None:
        return None
    return deepest / (g.n - 1)
