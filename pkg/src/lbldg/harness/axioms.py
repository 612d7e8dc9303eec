"""Axiom verification suites at desk scale.

Each suite runs cfg.trials independent trials; trial k draws from the
stream split off by (seed, suite-name, k), so reports are reproducible and
independent of execution order. A trial either verifies a concretely
constructed instance of the axiom or records a replayable counterexample.

The constructions are pinned so every trial is decidable:

- A1 realizes an affine Weyl element as a monomial normalizer matrix and
  checks that precomposing any chart with it is again a chart, acting the
  same way on sampled apartment points.
- A2 computes the apartment overlap of a random chart and confirms a single
  Weyl element transports sampled overlap points, with the constraint count
  within the root bound.
- A3r builds point pairs sharing a chart by construction and checks the
  distance read in any chart presentation agrees.
- TI exercises the pseudo-distance axioms on random point triples.
- A4 builds the transition between two sector charts in unipotent-times-
  normalizer-times-unipotent form, so one chart provably contains deep
  subsectors of both sectors; trials confirm membership at sampled depths.
- EC starts from a root element whose overlap is a half-apartment and
  builds the third chart from the opposite root element; trials confirm the
  three pairwise overlaps are the two half-apartments and their wall.
"""

import time
from fractions import Fraction

from ..apartment import ApartmentVec, affine_from_mu, apply_weyl, in_wconvex
from ..building import (
    RootElem,
    apartment_overlap,
    chart_image,
    normalizer_of,
    trop,
    x_mu,
)
from ..errors import AmbiguousWeyl
from ..rootsys import type_A
from ..symspace import act, distance, equivalent, matrix_to_json
from ..valfield import series as fs
from ..valfield.lam import LambdaVal
from .generators import (
    gen_apartment_mu,
    gen_diagonal,
    gen_group_elem,
    gen_point,
    gen_root_elem,
    gen_unipotent,
    sample_in_region,
    trial_rng,
)
from .report import Report, run_check

ZERO = LambdaVal.of(0)


def _draw(cfg, rng):
    return gen_group_elem(
        rng,
        cfg.n,
        cfg.exponent_magnitude_bound,
        cfg.exponent_denominator_bound,
        cfg.factor_count,
    )


def _mat(g):
    return matrix_to_json(g.entries)


def _mu_strs(mu):
    return [str(v) for v in mu]


def _vec(rs, mu):
    return ApartmentVec.from_mu(rs, mu)


# --- A1: precomposition with the affine Weyl group ----------------------------


def _check_a1(cfg):
    rs = type_A(cfg.n - 1)

    def one(trial):
        rng = trial_rng(cfg.seed, "A1", trial)
        g = _draw(cfg, rng)
        sigma = tuple(rng.sample(range(1, cfg.n + 1), cfg.n))
        c = gen_apartment_mu(rng, cfg.n)
        w = affine_from_mu(rs, sigma, list(c))
        nw = normalizer_of(w, cfg.n)
        for _ in range(4):
            mu = _vec(rs, gen_apartment_mu(rng, cfg.n))
            left = act(g @ nw, x_mu(mu))
            right = act(g, x_mu(apply_weyl(w, mu)))
            if not equivalent(left, right):
                return {
                    "g": _mat(g),
                    "perm": list(sigma),
                    "shift": _mu_strs(c),
                    "mu": _mu_strs(mu.to_mu()),
                }
        return None

    return [run_check("charts absorb affine Weyl precomposition", cfg.trials, one)]


# --- A2: two charts differ by one Weyl element on their overlap ---------------


def _check_a2(cfg):
    rs = type_A(cfg.n - 1)
    bound = cfg.n * (cfg.n - 1)

    def one(trial):
        rng = trial_rng(cfg.seed, "A2", trial)
        g = None
        res = None
        for _ in range(40):
            cand = _draw(cfg, rng)
            try:
                got = apartment_overlap(cand)
            except AmbiguousWeyl:
                return {"g": _mat(cand), "ambiguous": True}
            if got is not None:
                g, res = cand, got
                break
        if g is None:
            return {"note": "no chart with nonempty overlap in 40 draws"}
        region, w = res
        if len(region.constraints) > bound:
            return {"g": _mat(g), "constraints": len(region.constraints)}
        for mu in sample_in_region(rng, region, 20):
            if chart_image(g, mu) != apply_weyl(w, mu):
                return {"g": _mat(g), "mu": _mu_strs(mu.to_mu())}
        return None

    return [run_check("overlaps carry a single Weyl transport", cfg.trials, one)]


# --- A3r: distance is chart-independent ----------------------------------------


def _check_a3r(cfg):
    rs = type_A(cfg.n - 1)
    zero = _vec(rs, [Fraction(0)] * cfg.n)

    def one(trial):
        rng = trial_rng(cfg.seed, "A3r", trial)
        h = _draw(cfg, rng)
        nu = _vec(rs, gen_apartment_mu(rng, cfg.n))
        base = distance(x_mu(zero), x_mu(nu))
        moved = distance(act(h, x_mu(zero)), act(h, x_mu(nu)))
        if moved != base:
            return {"h": _mat(h), "nu": _mu_strs(nu.to_mu()), "kind": "chart"}
        sigma = tuple(rng.sample(range(1, cfg.n + 1), cfg.n))
        w = affine_from_mu(rs, sigma, list(gen_apartment_mu(rng, cfg.n)))
        rewound = distance(x_mu(apply_weyl(w, zero)), x_mu(apply_weyl(w, nu)))
        if rewound != base:
            return {"h": _mat(h), "nu": _mu_strs(nu.to_mu()), "kind": "weyl"}
        return None

    return [run_check("distance agrees across chart presentations", cfg.trials, one)]


# --- TI: pseudo-distance axioms -------------------------------------------------


def _check_ti(cfg):
    def one(trial):
        rng = trial_rng(cfg.seed, "TI", trial)
        x, y, z = (
            gen_point(
                rng,
                cfg.n,
                cfg.exponent_magnitude_bound,
                cfg.exponent_denominator_bound,
                cfg.factor_count,
            )
            for _ in range(3)
        )
        dxy, dyz, dxz = distance(x, y), distance(y, z), distance(x, z)
        if dxy < ZERO or distance(x, x) != ZERO:
            return {"x": _mat(x), "y": _mat(y), "kind": "positivity"}
        if dxy != distance(y, x):
            return {"x": _mat(x), "y": _mat(y), "kind": "symmetry"}
        if dxz > dxy + dyz:
            return {
                "x": _mat(x),
                "y": _mat(y),
                "z": _mat(z),
                "kind": "triangle",
            }
        return None

    return [run_check("pseudo-distance axioms hold on triples", cfg.trials, one)]


# --- A4: two sectors admit a common chart ---------------------------------------


def _staircase(n):
    mu = [Fraction(n - 1 - 2 * i) for i in range(n)]
    shift = sum(mu) / n
    return [v - shift for v in mu]


def _trop_bound(g):
    vals = [
        abs(v.finite_value) for row in trop(g) for v in row if not v.is_bottom
    ]
    return max(vals, default=Fraction(0))


def _check_a4(cfg):
    rs = type_A(cfg.n - 1)
    stair = _staircase(cfg.n)

    def one(trial):
        rng = trial_rng(cfg.seed, "A4", trial)
        span = cfg.exponent_magnitude_bound
        denom = cfg.exponent_denominator_bound
        u1 = gen_unipotent(rng, cfg.n, span=span, denom=denom)
        a1 = gen_diagonal(rng, cfg.n, span=span, denom=denom)
        sigma = tuple(rng.sample(range(1, cfg.n + 1), cfg.n))
        w = affine_from_mu(rs, sigma, list(gen_apartment_mu(rng, cfg.n)))
        nw = normalizer_of(w, cfg.n)
        u2 = gen_unipotent(rng, cfg.n, span=span, denom=denom)
        a2 = gen_diagonal(rng, cfg.n, span=span, denom=denom)
        b1 = u1 @ a1
        g = b1 @ nw @ u2 @ a2
        # a chart containing deep subsectors of both sectors: the left
        # factor's chart; depth clears every exponent in play
        bound = sum(_trop_bound(f) for f in (u1, a1, nw, u2, a2))
        depth = 2 * cfg.n * (1 + bound)
        into_chart = b1.inverse()
        transition = into_chart @ g
        for k in range(4):
            mu = _vec(rs, [(depth + k) * v for v in stair])
            if chart_image(into_chart, mu) is None:
                return {
                    "g": _mat(g),
                    "mu": _mu_strs(mu.to_mu()),
                    "kind": "base sector",
                }
            if chart_image(transition, mu) is None:
                return {
                    "g": _mat(g),
                    "mu": _mu_strs(mu.to_mu()),
                    "kind": "moved sector",
                }
        return None

    return [run_check("sector pairs share a chart at depth", cfg.trials, one)]


# --- EC: exchange configuration from a root element -----------------------------


def _gap_point(rs, n, i, j, gamma):
    mu = [Fraction(0)] * n
    mu[i - 1] = gamma / 2
    mu[j - 1] = -gamma / 2
    return _vec(rs, mu)


def _check_ec(cfg):
    rs = type_A(cfg.n - 1)

    def one(trial):
        rng = trial_rng(cfg.seed, "EC", trial)
        u, i, j, s = gen_root_elem(
            rng,
            cfg.n,
            cfg.exponent_magnitude_bound,
            cfg.exponent_denominator_bound,
        )
        exp, coef = s.terms[0]
        ell = exp
        opp = RootElem(cfg.n, j, i, fs.monomial(-exp, 1 / coef)).as_group()
        bad = {"s": fs.to_str(s), "i": i, "j": j}
        ov12 = apartment_overlap(u)
        ov13 = apartment_overlap(opp)
        ov23 = apartment_overlap(u.inverse() @ opp)
        if ov12 is None or ov13 is None or ov23 is None:
            return dict(bad, kind="empty overlap")
        if any(len(res[0].constraints) != 1 for res in (ov12, ov13, ov23)):
            return dict(bad, kind="not a half-apartment")
        wall = _gap_point(rs, cfg.n, i, j, ell)
        plus = _gap_point(rs, cfg.n, i, j, ell + 2)
        minus = _gap_point(rs, cfg.n, i, j, ell - 2)
        table = (
            (ov12[0], True, True, False),
            (ov13[0], True, False, True),
            (ov23[0], True, True, False),
        )
        for region, on_wall, on_plus, on_minus in table:
            if (
                in_wconvex(region, wall) != on_wall
                or in_wconvex(region, plus) != on_plus
                or in_wconvex(region, minus) != on_minus
            ):
                return dict(bad, kind="wrong half-apartment")
        # each root element fixes its closed half-apartment pointwise
        if chart_image(u, wall) != wall or chart_image(u, plus) != plus:
            return dict(bad, kind="plus chart moves its half")
        if chart_image(opp, wall) != wall or chart_image(opp, minus) != minus:
            return dict(bad, kind="minus chart moves its half")
        # the remaining transition reflects across the shared wall
        mu = plus.to_mu()
        nu = list(mu)
        nu[i - 1] = ell + mu[j - 1]
        nu[j - 1] = mu[i - 1] - ell
        reflected = _vec(rs, nu)
        got = chart_image(u.inverse() @ opp, plus)
        if got != reflected or apply_weyl(ov23[1], plus) != reflected:
            return dict(bad, kind="transition is not the wall reflection")
        if apply_weyl(ov23[1], wall) != wall:
            return dict(bad, kind="transition moves the wall")
        return None

    return [run_check("exchange configurations close up", cfg.trials, one)]


AXIOMS = {
    "A1": _check_a1,
    "A2": _check_a2,
    "A3r": _check_a3r,
    "TI": _check_ti,
    "A4": _check_a4,
    "EC": _check_ec,
}

AXIOM_NAMES = tuple(AXIOMS)

ENUMERATION_BACKED = {"A2", "EC"}


def check_axiom(cfg, which):
    """Run one axiom suite; returns a Report."""
    if which not in AXIOMS:
        raise KeyError(f"unknown axiom {which!r}")
    cfg.validate(enumeration=which in ENUMERATION_BACKED)
    start = time.monotonic()
    rows = AXIOMS[which](cfg)
    elapsed = int((time.monotonic() - start) * 1000)
    return Report("axioms", which, cfg, tuple(rows), elapsed)
