"""Stabilizer and retraction theorem suites.

Same trial discipline as the axiom suites: per-trial streams split by
(seed, suite-name, trial), every check decided by exact arithmetic, and
failures recorded with replayable payloads.

The stabilizer suites compare matrix-shape predicates against the action
itself. For the base point and the full apartment the shape test is exactly
the stabilizer, so trials check equivalence against moved-or-fixed probes.
For chambers and half-apartments the shape test describes a subgroup that
fixes the region pointwise; trials verify that direction on sampled points
and, within the single-root family where the shape is also necessary, the
converse with a wall witness.
"""

import time
from fractions import Fraction

from ..apartment import ApartmentVec
from ..building import (
    APARTMENT_POINTWISE,
    CHAMBER_C0,
    HalfApt,
    RootElem,
    stab_o,
    stab_predicates,
    x_mu,
)
from ..boundaries import (
    SectorAtInfinity,
    SectorGerm,
    germ_equal,
    infinity_equal,
    sampled_germ_equal,
    sampled_infinity_equal,
    transitivity_witness,
)
from ..rootsys import type_A
from ..symspace import (
    GroupElem,
    SPDPoint,
    act,
    distance,
    equivalent,
    matrix_to_json,
    retract,
)
from ..valfield import series as fs
from ..valfield.lam import LambdaVal
from .generators import (
    gen_apartment_mu,
    gen_diag_units,
    gen_dominant_mu,
    gen_group_elem,
    gen_point,
    gen_stab_elem,
    gen_unipotent_O,
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


# --- base-point stabilizer -------------------------------------------------------


def _check_stab_o(cfg):
    o = SPDPoint.basepoint(cfg.n)

    def one(trial):
        rng = trial_rng(cfg.seed, "Stab_o", trial)
        g = _draw(cfg, rng)
        shape = stab_o(g)
        moved = distance(o, act(g, o))
        if shape != (moved == ZERO):
            return {"g": _mat(g), "shape": shape, "distance": str(moved)}
        return None

    return [run_check("integral shape is exactly the base-point stabilizer", cfg.trials, one)]


# --- pointwise apartment stabilizer ------------------------------------------------


def _probe_mus(cfg, rng, rs):
    """Two deep opposite staircases plus random points: depth clears every
    exponent a product of factor_count factors can carry."""
    k = cfg.factor_count * cfg.n * cfg.exponent_magnitude_bound + 1
    stair = [Fraction(k * (cfg.n - 1 - 2 * i)) for i in range(cfg.n)]
    shift = sum(stair) / cfg.n
    stair = [v - shift for v in stair]
    mus = [stair, [-v for v in stair]]
    for _ in range(4):
        mus.append(list(gen_apartment_mu(rng, cfg.n)))
    return [ApartmentVec.from_mu(rs, m) for m in mus]


def _check_stab_a(cfg):
    rs = type_A(cfg.n - 1)

    def one(trial):
        rng = trial_rng(cfg.seed, "Stab_A", trial)
        g = gen_diag_units(rng, cfg.n) if trial % 2 == 0 else _draw(cfg, rng)
        shape = stab_predicates(g, APARTMENT_POINTWISE)
        fixes = all(
            equivalent(act(g, x_mu(mu)), x_mu(mu)) for mu in _probe_mus(cfg, rng, rs)
        )
        if shape != fixes:
            return {"g": _mat(g), "shape": shape, "fixes": fixes}
        return None

    return [run_check("diagonal units are exactly the apartment fixers", cfg.trials, one)]


# --- pointwise chamber stabilizer --------------------------------------------------


def _check_stab_c0(cfg):
    rs = type_A(cfg.n - 1)
    denom = cfg.exponent_denominator_bound

    def positive(trial):
        rng = trial_rng(cfg.seed, "Stab_C0+", trial)
        g = gen_unipotent_O(rng, cfg.n, lower=False) @ gen_diag_units(rng, cfg.n)
        if not stab_predicates(g, CHAMBER_C0):
            return {"g": _mat(g), "kind": "shape rejected"}
        for _ in range(20):
            mu = ApartmentVec.from_mu(rs, gen_dominant_mu(rng, cfg.n, denom=denom))
            if not equivalent(act(g, x_mu(mu)), x_mu(mu)):
                return {"g": _mat(g), "mu": _mu_strs(mu.to_mu())}
        return None

    def negative(trial):
        rng = trial_rng(cfg.seed, "Stab_C0-", trial)
        g = gen_unipotent_O(rng, cfg.n, lower=False) @ gen_diag_units(rng, cfg.n)
        i, j = sorted(rng.sample(range(1, cfg.n + 1), 2))
        ell = Fraction(rng.randint(1, 2 * denom), denom)
        bad = g @ RootElem(cfg.n, i, j, fs.monomial(ell, Fraction(1))).as_group()
        if stab_predicates(bad, CHAMBER_C0):
            return {"g": _mat(bad), "kind": "shape accepted"}
        # interior point whose (i, j) gap is ell/2, below the entry depth:
        # the staircase has consecutive gaps 2*gamma, so positions i and j
        # sit 2*gamma*(j - i) apart
        gamma = ell / (4 * (j - i))
        mu = [gamma * (cfg.n - 1 - 2 * a) for a in range(cfg.n)]
        shift = sum(mu) / cfg.n
        vec = ApartmentVec.from_mu(rs, [v - shift for v in mu])
        if equivalent(act(bad, x_mu(vec)), x_mu(vec)):
            return {"g": _mat(bad), "mu": _mu_strs(vec.to_mu()), "kind": "not moved"}
        return None

    return [
        run_check("triangular integral products fix the chamber", cfg.trials, positive),
        run_check("a too-shallow entry moves an interior point", cfg.trials, negative),
    ]


# --- half-apartment stabilizers ------------------------------------------------


def _check_half_apt(cfg):
    rs = type_A(cfg.n - 1)
    denom = cfg.exponent_denominator_bound
    span = cfg.exponent_magnitude_bound

    def _gap_points(rng, i, j, ell):
        """Points of {mu_i - mu_j >= ell}, the wall first."""
        out = []
        for bump in (Fraction(0), Fraction(1, denom), Fraction(3), Fraction(7)):
            others = [
                Fraction(rng.randint(-2 * denom, 2 * denom), denom)
                for _ in range(cfg.n - 2)
            ]
            gap = ell + bump
            rest = sum(others)
            mu = [Fraction(0)] * cfg.n
            mu[j - 1] = -(rest + gap) / 2
            mu[i - 1] = mu[j - 1] + gap
            spots = [a for a in range(cfg.n) if a not in (i - 1, j - 1)]
            for a, v in zip(spots, others):
                mu[a] = v
            out.append(ApartmentVec.from_mu(rs, mu))
        return out

    def one(trial):
        rng = trial_rng(cfg.seed, "HalfAptStab", trial)
        i, j = rng.sample(range(1, cfg.n + 1), 2)
        ell = Fraction(rng.randint(-span, span), denom)
        target = HalfApt(i, j, ell)
        depth = Fraction(rng.randint(0, 2 * denom), denom)
        deep = RootElem(cfg.n, i, j, fs.monomial(ell - depth, Fraction(1)))
        g = gen_diag_units(rng, cfg.n) @ deep.as_group()
        if not stab_predicates(g, target):
            return {"g": _mat(g), "kind": "shape rejected"}
        for vec in _gap_points(rng, i, j, ell):
            if not equivalent(act(g, x_mu(vec)), x_mu(vec)):
                return {"g": _mat(g), "mu": _mu_strs(vec.to_mu()), "kind": "moved"}
        shallow = RootElem(
            cfg.n, i, j, fs.monomial(ell + Fraction(1, denom), Fraction(1))
        ).as_group()
        if stab_predicates(shallow, target):
            return {"g": _mat(shallow), "kind": "shape accepted"}
        wall = _gap_points(rng, i, j, ell)[0]
        if equivalent(act(shallow, x_mu(wall)), x_mu(wall)):
            return {"g": _mat(shallow), "kind": "wall not moved"}
        return None

    return [run_check("root depth against the wall level decides fixing", cfg.trials, one)]


# --- retraction -----------------------------------------------------------------


def _check_retract(cfg):
    rs = type_A(cfg.n - 1)

    def one(trial):
        rng = trial_rng(cfg.seed, "Retract", trial)
        x = gen_point(
            rng,
            cfg.n,
            cfg.exponent_magnitude_bound,
            cfg.exponent_denominator_bound,
            cfg.factor_count,
        )
        y = gen_point(
            rng,
            cfg.n,
            cfg.exponent_magnitude_bound,
            cfg.exponent_denominator_bound,
            cfg.factor_count,
        )
        if distance(x_mu(retract(x)), x_mu(retract(y))) > distance(x, y):
            return {"x": _mat(x), "y": _mat(y), "kind": "expanded"}
        for _ in range(2):
            mu = ApartmentVec.from_mu(rs, gen_apartment_mu(rng, cfg.n))
            if retract(x_mu(mu)) != mu:
                return {"mu": _mu_strs(mu.to_mu()), "kind": "apartment moved"}
        return None

    return [run_check("retraction diminishes distances and fixes the apartment", cfg.trials, one)]


# --- germs of sectors ------------------------------------------------------------


def _check_germ_borel(cfg):
    base = SectorGerm(GroupElem.identity(cfg.n))

    def agreement(trial):
        rng = trial_rng(cfg.seed, "GermBorel", trial)
        s = SectorGerm(gen_stab_elem(rng, cfg.n))
        shape = germ_equal(s, base)
        sampled = sampled_germ_equal(s, base)
        if shape != sampled:
            return {"g": _mat(s.g), "shape": shape, "sampled": sampled}
        return None

    def witness(trial):
        rng = trial_rng(cfg.seed, "GermBorel-w", trial)
        s1 = SectorGerm(gen_stab_elem(rng, cfg.n))
        s2 = SectorGerm(gen_stab_elem(rng, cfg.n))
        h = transitivity_witness(s1, s2)
        if not germ_equal(SectorGerm(h.lift() @ s1.g), s2):
            return {"g1": _mat(s1.g), "g2": _mat(s2.g)}
        return None

    return [
        run_check("residue shape matches sampled germ comparison", cfg.trials, agreement),
        run_check("residue witness maps germ to germ", cfg.trials, witness),
    ]


# --- sectors at infinity ----------------------------------------------------------


def _check_infinity_borel(cfg):
    base = SectorAtInfinity(GroupElem.identity(cfg.n))

    def one(trial):
        rng = trial_rng(cfg.seed, "InfinityBorel", trial)
        c = SectorAtInfinity(_draw(cfg, rng))
        shape = infinity_equal(c, base)
        sampled = sampled_infinity_equal(c, base)
        if shape != sampled:
            return {"g": _mat(c.g), "shape": shape, "sampled": sampled}
        return None

    return [run_check("triangularity matches sampled parallelism", cfg.trials, one)]


# --- Iwasawa at the base point ----------------------------------------------------


def _check_iwasawa_o(cfg):
    rs = type_A(cfg.n - 1)
    origin = ApartmentVec.from_mu(rs, [Fraction(0)] * cfg.n)
    o = SPDPoint.basepoint(cfg.n)

    def one(trial):
        rng = trial_rng(cfg.seed, "IwasawaO", trial)
        g = gen_stab_elem(rng, cfg.n)
        if retract(act(g, o)) != origin:
            return {"g": _mat(g)}
        return None

    return [run_check("integral orbits retract to the origin", cfg.trials, one)]


THEOREMS = {
    "Stab_o": _check_stab_o,
    "Stab_A": _check_stab_a,
    "Stab_C0": _check_stab_c0,
    "HalfAptStab": _check_half_apt,
    "Retract": _check_retract,
    "GermBorel": _check_germ_borel,
    "InfinityBorel": _check_infinity_borel,
    "IwasawaO": _check_iwasawa_o,
}

THEOREM_NAMES = tuple(THEOREMS)


def check_theorem(cfg, which):
    """Run one theorem suite; returns a Report."""
    if which not in THEOREMS:
        raise KeyError(f"unknown theorem {which!r}")
    cfg.validate()
    start = time.monotonic()
    rows = THEOREMS[which](cfg)
    elapsed = int((time.monotonic() - start) * 1000)
    return Report("theorems", which, cfg, tuple(rows), elapsed)
