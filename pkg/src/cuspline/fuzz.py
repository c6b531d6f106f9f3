"""Seeded random instances and the invariant suites driven by ``cuspline fuzz``.

Each trial draws from its own ``random.Random`` stream derived from
``(suite, seed, trial index)``, so reports are reproducible byte for byte.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from . import serial
from .glalg import Segment, StandardGL, apply_left, apply_right, e_exponent, m_star
from .jantzen import assoc_check, direct_mu_filter, mu_filter_left, per_line_flags, psi_glue, tempered_glued, x_project
from .lines import CuspidalSymbol, LineSet, Registry
from .params import (
    ClassicalStandard,
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    SigmaSupport,
    TemperedParam,
    contragredient_param,
    degree,
    reduces_against,
)
from .transfer import LinePairContext, transfer_generic, transfer_preserves_generic_unitarity
from .unitarity import GenericParam, is_unitarizable_generic, preservation_check

HALF = Fraction(1, 2)


def default_registry() -> Registry:
    """Symbols used by the fuzz suites: self-dual lines with alpha 0, 1/2
    and 1 (two of each, for transfer), and one non-self-dual pair."""
    syms = [
        CuspidalSymbol("a0", True, 0),
        CuspidalSymbol("b0", True, 0),
        CuspidalSymbol("a1/2", True, HALF),
        CuspidalSymbol("b1/2", True, HALF),
        CuspidalSymbol("a1", True, 1),
        CuspidalSymbol("b1", True, 1),
        CuspidalSymbol("u", False, 0, "u~"),
        CuspidalSymbol("u~", False, 0, "u"),
    ]
    return Registry(syms)


def line_symbols(reg: Registry) -> list[CuspidalSymbol]:
    """One canonical symbol per line."""
    return [s for s in reg if s.id == s.line_id]


def random_segment(rng: random.Random, cusp: CuspidalSymbol, lo=-2, hi=2, max_card=3) -> Segment:
    b = Fraction(rng.randint(2 * lo, 2 * hi), 2)
    return Segment(cusp, b, b + rng.randrange(max_card))


def random_standard(rng: random.Random, syms, max_segments=3, max_card=3) -> StandardGL:
    n = rng.randint(0, max_segments)
    return StandardGL.of(*(random_segment(rng, rng.choice(syms), max_card=max_card) for _ in range(n)))


def random_tempered(rng: random.Random, line: CuspidalSymbol, sigma: SigmaSupport) -> TemperedParam:
    if not line.self_dual:
        extras = [Segment(rng.choice([line, line.dual()]), -c, c) for c in (0, HALF, 1) if rng.random() < 0.3]
        return TemperedParam(DiscreteSeriesParam(line, sigma=sigma), (), tuple(extras))
    a = line.alpha
    jord = set()
    for _ in range(rng.randint(0, 2)):
        b = a + rng.randint(-2, 1)
        jord.add(Segment(line, b, b + rng.randint(0, 2)))
    jord = sorted(jord)
    eps = tuple((s, rng.choice((1, -1))) for s in jord if rng.random() < 0.5)
    if len(jord) >= 2 and rng.random() < 0.3:
        eps += (((jord[0], jord[1]), rng.choice((1, -1))),)
    ds = DiscreteSeriesParam(line, tuple(jord), eps, sigma)
    sym = [Segment(line, -c, c) for c in (0, HALF, 1, Fraction(3, 2), 2)]
    signed = [(s, rng.choice((1, -1))) for s in sym if reduces_against(s, jord) and rng.random() < 0.4]
    signed_segs = {s for s, _ in signed}
    extras = [g for g in sym if (g in signed_segs or not reduces_against(g, jord)) and rng.random() < 0.25]
    return TemperedParam(ds, tuple(signed), tuple(extras))


def random_langlands(rng: random.Random, line: CuspidalSymbol, sigma: SigmaSupport) -> LanglandsParam:
    neg = []
    for _ in range(rng.randint(0, 2)):
        cusp = rng.choice([line, line.dual()])
        s = random_segment(rng, cusp, lo=-1, hi=3)
        if e_exponent(s) > 0:
            neg.append(s)
    return LanglandsParam(tuple(neg), random_tempered(rng, line, sigma))


def random_family(rng: random.Random, lines, sigma: SigmaSupport) -> JantzenFamily:
    chosen = [l for l in lines if rng.random() < 0.7]
    return JantzenFamily.build(sigma, [random_langlands(rng, l, sigma) for l in chosen])


def random_exponent(rng: random.Random) -> Fraction:
    if rng.random() < 0.3:
        return rng.choice([Fraction(1, 4), HALF, Fraction(3, 4), Fraction(1, 3), Fraction(2, 3)])
    den = rng.randint(2, 20)
    return Fraction(rng.randint(1, den - 1), den)


def random_generic_line(rng: random.Random, line: CuspidalSymbol, sigma: SigmaSupport) -> tuple[list, TemperedParam]:
    deltas = []
    half_widths = (0, HALF, 1)
    for _ in range(rng.randint(0, 3)):
        c = rng.choice(half_widths)
        x = random_exponent(rng)
        cusp = rng.choice([line, line.dual()])
        deltas.append(Segment(cusp, -c + x, c + x))
        # keep the Hermitian condition satisfiable on non-self-dual lines
        if not line.self_dual and rng.random() < 0.7:
            deltas.append(Segment(cusp.dual(), -c + x, c + x))
    return deltas, random_tempered(rng, line, sigma)


def random_generic(rng: random.Random, lines, sigma: SigmaSupport) -> GenericParam:
    deltas, layers = [], []
    for line in lines:
        if rng.random() < 0.8:
            d, t = random_generic_line(rng, line, sigma)
            deltas.extend(d)
            layers.append((line.line_id, t))
    return GenericParam(tuple(deltas), tuple(layers), sigma)


def shrink_generic(p: GenericParam, fails: Callable[[GenericParam], bool]) -> GenericParam:
    """Greedily drop Langlands segments while the check keeps failing."""
    changed = True
    while changed:
        changed = False
        for i in range(len(p.deltas)):
            q = GenericParam(p.deltas[:i] + p.deltas[i + 1:], p.tempered, p.sigma)
            if fails(q):
                p, changed = q, True
                break
    return p


# -- suites -------------------------------------------------------------------
# Each suite maps a per-trial rng to None (pass) or a JSON-able counterexample.

SIGMA = SigmaSupport("sigma", 1)


def _suite_coassoc(rng, reg):
    sym = reg["a0"]
    beta = random_standard(rng, [sym], max_segments=4, max_card=3)
    lhs = apply_left(m_star(beta), m_star)
    rhs = apply_right(m_star(beta), m_star)
    if lhs != rhs:
        return {"beta": serial.gl_json(beta)}
    return None


def _three_parts(rng, lines):
    parts = [[], [], []]
    for l in lines:
        parts[rng.randrange(3)].append(l)
    return tuple(LineSet.of(*p) for p in parts)


def _suite_assoc(rng, reg):
    lines = rng.sample(line_symbols(reg), 3)
    fam = random_family(rng, lines, SIGMA)
    parts = _three_parts(rng, lines)
    if not assoc_check(fam, parts):
        return {"family": serial.family_json(fam), "parts": [sorted(p.ids) for p in parts]}
    return None


def _suite_roundtrip(rng, reg):
    lines = rng.sample(line_symbols(reg), rng.randint(1, 3))
    fam = random_family(rng, lines, SIGMA)
    cut = rng.randint(0, len(lines))
    x1, x2 = LineSet.of(*lines[:cut]), LineSet.of(*lines[cut:])
    g1, g2 = x_project(fam, (x1, x2), 1), x_project(fam, (x1, x2), 2)
    problems = []
    glued = psi_glue(SIGMA, [(x1, g1), (x2, g2)])
    if glued != fam:
        problems.append("glue o project")
    if x_project(glued, (x1, x2), 1) != g1 or x_project(glued, (x1, x2), 2) != g2:
        problems.append("project o glue")
    r = SIGMA.rank
    if degree(glued) != (degree(g1) - r) + (degree(g2) - r) + r:
        problems.append("degree")
    c = contragredient_param(fam)
    if contragredient_param(glued) != psi_glue(SIGMA, [(x1, contragredient_param(g1)), (x2, contragredient_param(g2))]):
        problems.append("contragredient/glue")
    if x_project(c, (x1, x2), 1) != contragredient_param(g1):
        problems.append("contragredient/project")
    flags = per_line_flags(fam)
    t, s = tempered_glued(fam)
    if t != all(f[0] for f in flags.values()) or s != all(f[1] for f in flags.values()):
        problems.append("temperedness")
    if tempered_glued(fam) != tuple(a and b for a, b in zip(tempered_glued(g1), tempered_glued(g2))):
        problems.append("temperedness/parts")
    if problems:
        return {"family": serial.family_json(fam), "x1": sorted(x1.ids), "problems": problems}
    return None


def _suite_mu_left(rng, reg):
    s1, s2 = rng.sample(line_symbols(reg), 2)
    x1, x2 = LineSet.of(s1), LineSet.of(s2)
    beta = random_standard(rng, sorted(x1.symbols), max_segments=2)
    gamma = ClassicalStandard(random_standard(rng, sorted(x2.symbols), max_segments=2), SIGMA)
    if mu_filter_left(beta, gamma, x1, x2) != direct_mu_filter(beta, gamma, x1, x2):
        return {"beta": serial.gl_json(beta), "gamma": serial.gl_json(gamma.gl)}
    return None


def _suite_preservation(rng, reg):
    lines = rng.sample(line_symbols(reg), rng.randint(1, 3))
    p = random_generic(rng, lines, SIGMA)
    if not preservation_check(p):
        p = shrink_generic(p, lambda q: not preservation_check(q))
        return {"generic": serial.generic_json(p)}
    return None


TRANSFER_PAIRS = (("a0", "b0"), ("a1/2", "b1/2"), ("a1", "b1"))


def _suite_transfer(rng, reg):
    src, dst = (reg[x] for x in rng.choice(TRANSFER_PAIRS))
    if rng.random() < 0.5:
        src, dst = dst, src
    ctx = LinePairContext(src, SIGMA, dst, SigmaSupport("sigma2", 2))
    deltas, tau = random_generic_line(rng, src, SIGMA)
    p = GenericParam(tuple(deltas), ((src.line_id, tau),), SIGMA)
    problems = []
    if not transfer_preserves_generic_unitarity(ctx, p):
        p = shrink_generic(p, lambda q: not transfer_preserves_generic_unitarity(ctx, q))
        problems.append("decision changed")
    if (ctx.warning is not None) != (src.alpha == 0):
        problems.append("alpha-zero warning")
    if transfer_generic(ctx.inverse(), transfer_generic(ctx, p)) != p:
        problems.append("inverse")
    if problems:
        return {"src": src.id, "dst": dst.id, "generic": serial.generic_json(p), "problems": problems}
    return None


SUITES = {
    "coassoc": _suite_coassoc,
    "assoc": _suite_assoc,
    "roundtrip": _suite_roundtrip,
    "mu-left": _suite_mu_left,
    "preservation": _suite_preservation,
    "transfer": _suite_transfer,
}


class UnknownSuite(KeyError):
    pass


def run_suite(suite: str, trials: int, seed: int, max_reported: int = 5) -> dict:
    if suite not in SUITES:
        raise UnknownSuite(suite)
    check = SUITES[suite]
    reg = default_registry()
    failures = []
    for i in range(trials):
        rng = random.Random(f"{suite}:{seed}:{i}")
        bad = check(rng, reg)
        if bad is not None:
            failures.append({"trial": i, "counterexample": bad})
    return {
        "suite": suite,
        "seed": seed,
        "trials": trials,
        "failures": len(failures),
        "counterexamples": failures[:max_reported],
    }


def decision_rate(trials: int, seed: int) -> float:
    """Fraction of random multi-line generic parameters that are unitarizable
    (sanity check that the generators hit both outcomes)."""
    reg = default_registry()
    hits = 0
    for i in range(trials):
        rng = random.Random(f"rate:{seed}:{i}")
        lines = rng.sample(line_symbols(reg), rng.randint(1, 3))
        hits += is_unitarizable_generic(random_generic(rng, lines, SIGMA))[0]
    return hits / trials
