"""Jantzen decomposition along a regular partition of cuspidal lines.

Families are stored as their per-line components, so projection and gluing
are bookkeeping; the interesting content is that the Jacquet-module
identities (filters of mu*, gluing of mu*, distribution of products) agree
with direct computation on standard modules.
"""
from __future__ import annotations

import enum
from itertools import product
from typing import Sequence

from .formal import FormalSum
from .glalg import M_star, Segment, StandardGL, e_exponent, filter_by_support, support_symbols
from .lines import CuspidalSymbol, InvalidPartition, LineSet, is_regular_partition, is_regular_partition_many
from .params import (
    ClassicalStandard,
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    ParameterError,
    SigmaSupport,
    TemperedParam,
    infinitesimal_character,
    mu_star_classical,
    normalized_points,
    steinberg_support,
)


class DecompositionRequired(ValueError):
    """A product decomposition has no combinatorial rule here and was not supplied."""


def _check_partition(x1: LineSet, x2: LineSet):
    # parts are unions of whole lines, so regularity never depends on support
    if not is_regular_partition(x1, x2):
        raise InvalidPartition(f"partition {x1!r} | {x2!r} is not regular")


def x_project(family: JantzenFamily, partition: tuple[LineSet, LineSet], side: int) -> JantzenFamily:
    x1, x2 = partition
    _check_partition(x1, x2)
    missing = family.line_ids() - (x1 | x2).line_ids
    if missing:
        raise InvalidPartition(f"family lines {sorted(missing)} are outside the partition")
    part = (x1, x2)[side - 1]
    return JantzenFamily(family.sigma, tuple((k, p) for k, p in family.per_line if part.contains_line(k)))


def langlands_display(family: JantzenFamily) -> tuple[list, JantzenFamily]:
    """Glued Langlands datum: segments of all lines grouped by exponent
    (descending; within a group by line id, then segment), plus the glued
    tempered family."""
    groups: dict = {}
    for _, p in family.per_line:
        for s in p.neg:
            groups.setdefault(e_exponent(s), []).append(s)
    display = [(ex, StandardGL.of(*groups[ex])) for ex in sorted(groups, reverse=True)]
    tempered = JantzenFamily(
        family.sigma, tuple((k, LanglandsParam((), p.tempered)) for k, p in family.per_line)
    )
    return display, tempered


def psi_glue(sigma: SigmaSupport, parts: Sequence[tuple[LineSet, JantzenFamily]]) -> JantzenFamily:
    line_sets = [ls for ls, _ in parts]
    for i in range(len(line_sets)):
        for j in range(i + 1, len(line_sets)):
            if not line_sets[i].isdisjoint(line_sets[j]):
                raise InvalidPartition("glued parts share lines")
    if not is_regular_partition_many(line_sets):
        raise InvalidPartition("glued parts do not form a regular partition")
    merged = []
    for ls, fam in parts:
        if fam.sigma != sigma:
            raise ParameterError(f"sigma mismatch: {fam.sigma!r} vs {sigma!r}")
        outside = fam.line_ids() - ls.line_ids
        if outside:
            raise InvalidPartition(f"part family has lines {sorted(outside)} outside its line set")
        merged.extend(fam.per_line)
    return JantzenFamily(sigma, tuple(merged))


def _induce(tau_prime: StandardGL, gamma):
    """Right label of ``tau' x| gamma``."""
    if not tau_prime:
        return gamma
    if isinstance(gamma, ClassicalStandard):
        return ClassicalStandard(tau_prime * gamma.gl, gamma.sigma)
    if isinstance(gamma, SigmaSupport):
        return ClassicalStandard(tau_prime, gamma)
    raise DecompositionRequired("cannot induce a nontrivial GL factor onto an irreducible family label")


def _require_within(ids: frozenset, part: LineSet, what: str):
    if not ids <= part.ids:
        raise InvalidPartition(f"{what} has support outside {part!r}: {sorted(ids - part.ids)}")


def mu_filter_left(beta: StandardGL, gamma, x1: LineSet, x2: LineSet) -> FormalSum:
    """Closed form of the X1-part of mu*(beta x| gamma) for beta on X1 and
    gamma on X2: the terms ``tau (x) 1`` of M*(beta), tensored with gamma."""
    _check_partition(x1, x2)
    _require_within(support_symbols(beta), x1, "beta")
    _require_within(gamma.symbol_ids(), x2, "gamma")
    if isinstance(gamma, SigmaSupport):
        gamma = ClassicalStandard(StandardGL(), gamma)
    kept = filter_by_support(M_star(beta), x1, x2)
    return kept.map(lambda t: (t[0], _induce(t[1], gamma)))


def mu_filter_right(beta: StandardGL, xi: FormalSum, x1: LineSet, x2: LineSet) -> FormalSum:
    """X2-part of mu*(beta x| gamma) from s_GL(gamma) = Xi (x) sigma: every
    ``xi (x) sigma`` becomes ``xi (x) (beta x| sigma)``."""
    _check_partition(x1, x2)
    _require_within(support_symbols(beta), x1, "beta")
    for (left, sigma), _ in xi:
        _require_within(support_symbols(left), x2, "Xi")
    return xi.map(lambda t: (t[0], ClassicalStandard(beta, t[1])))


def direct_mu_filter(beta: StandardGL, gamma: ClassicalStandard, x1: LineSet, x2: LineSet) -> FormalSum:
    """mu*((beta x gamma.gl) x| sigma) computed in full, then filtered to
    left support in X1 and right support in X2 u {sigma}."""
    full = mu_star_classical(beta * gamma.gl, gamma.sigma)
    return filter_by_support(full, x1, x2)


def product_distribute(sigma: SigmaSupport, sides: Sequence[tuple]) -> FormalSum:
    """``beta x| Psi(gamma_1, ..., gamma_k)`` for ``beta = beta_1 x ... x beta_k``.

    Each side is ``(LineSet, beta_i, gamma_i, decomposition_i)`` where the
    decomposition is a FormalSum of families giving ``beta_i x| gamma_i``;
    it may be None when ``beta_i`` is empty.  Result terms glue one
    constituent per side with the product multiplicity.
    """
    sums = []
    line_sets = []
    for ls, beta, gamma, decomposition in sides:
        _require_within(support_symbols(beta), ls, "beta")
        if gamma.sigma != sigma:
            raise ParameterError("inconsistent sigma across sides")
        if decomposition is None:
            if beta:
                raise DecompositionRequired(f"decomposition of {beta!r} x| gamma must be supplied")
            decomposition = FormalSum.single(gamma)
        for fam, _ in decomposition:
            if fam.sigma != sigma:
                raise ParameterError("inconsistent sigma in a supplied decomposition")
        sums.append(decomposition.map(lambda f: (f,)))
        line_sets.append(ls)
    out = FormalSum.single(())
    for s in sums:
        out = out.product(s, lambda a, b: a + b)
    return out.map(lambda fams: psi_glue(sigma, list(zip(line_sets, fams))))


def _glue_right(theta1, theta2, x1: LineSet, x2: LineSet):
    if isinstance(theta1, JantzenFamily) and isinstance(theta2, JantzenFamily):
        return psi_glue(theta1.sigma, [(x1, theta1), (x2, theta2)])
    c1 = theta1 if isinstance(theta1, ClassicalStandard) else ClassicalStandard(StandardGL(), theta1)
    c2 = theta2 if isinstance(theta2, ClassicalStandard) else ClassicalStandard(StandardGL(), theta2)
    if c1.sigma != c2.sigma:
        raise ParameterError("sigma mismatch while gluing")
    return ClassicalStandard(c1.gl * c2.gl, c1.sigma)


def mu_glue(mu1: FormalSum, mu2: FormalSum, x1: LineSet, x2: LineSet) -> FormalSum:
    """mu* of Psi(gamma_1, gamma_2) from mu*(gamma_1) and mu*(gamma_2)."""
    _check_partition(x1, x2)
    for mu, part in ((mu1, x1), (mu2, x2)):
        for (eta, theta), _ in mu:
            _require_within(support_symbols(eta), part, "eta")
            _require_within(theta.symbol_ids(), part, "theta")

    def combine(t1, t2):
        return (t1[0] * t2[0], _glue_right(t1[1], t2[1], x1, x2))

    return mu1.product(mu2, combine)


def tempered_glued(family: JantzenFamily) -> tuple[bool, bool]:
    tempered = all(not p.neg for _, p in family.per_line)
    square_integrable = tempered and all(
        not p.tempered.signed and not p.tempered.extra for _, p in family.per_line
    )
    return tempered, square_integrable


def per_line_flags(family: JantzenFamily) -> dict:
    return {k: tempered_glued(JantzenFamily(family.sigma, ((k, p),))) for k, p in family.per_line}


def assoc_check(family: JantzenFamily, parts: tuple[LineSet, LineSet, LineSet]) -> bool:
    x1, x2, x3 = parts
    if not is_regular_partition_many(parts):
        raise InvalidPartition("three-part partition is not regular")
    x12, x13, x23 = x1 | x2, x1 | x3, x2 | x3
    left = x_project(x_project(family, (x12, x3), 1), (x1, x2), 1)
    right = x_project(x_project(family, (x13, x2), 1), (x1, x3), 1)
    if left != right:
        return False
    pi1 = x_project(family, (x1, x23), 1)
    pi2 = x_project(family, (x2, x13), 1)
    pi3 = x_project(family, (x3, x12), 1)
    sigma = family.sigma
    glued_a = psi_glue(sigma, [(x12, psi_glue(sigma, [(x1, pi1), (x2, pi2)])), (x3, pi3)])
    glued_b = psi_glue(sigma, [(x1, pi1), (x23, psi_glue(sigma, [(x2, pi2), (x3, pi3)]))])
    return glued_a == glued_b == family


def lemma_nonzero_check(beta: StandardGL, sigma: SigmaSupport, part: LineSet) -> bool:
    """Whether the ``part``-filter of mu*(beta x| sigma) is nonzero; the
    other side of the partition is every line outside ``part``."""
    total = mu_star_classical(beta, sigma)
    ids = part.ids
    kept = total.filter(
        lambda t: support_symbols(t[0]) <= ids and not (t[1].symbol_ids() & ids)
    )
    return bool(kept)


class SteinbergClass(enum.Enum):
    STEINBERG = "Steinberg"
    DUAL_CANDIDATE = "DualCandidate"
    OTHER = "Other"


def _steinberg_shape(line: CuspidalSymbol, sigma: SigmaSupport, n: int) -> LanglandsParam:
    a = line.alpha
    return LanglandsParam((), TemperedParam(DiscreteSeriesParam(line, (Segment(line, a, a + n - 1),), sigma=sigma)))


def _dual_candidate_shape(line: CuspidalSymbol, sigma: SigmaSupport, n: int) -> LanglandsParam:
    a = line.alpha
    ds = DiscreteSeriesParam(line, sigma=sigma)
    if a == 0:
        # the exponent-0 point cannot be a Langlands segment; it stays in the
        # tempered layer as the negatively signed summand of rho x| sigma
        neg = tuple(Segment(line, x, x) for x in range(1, n))
        return LanglandsParam(neg, TemperedParam(ds, ((Segment(line, 0, 0), -1),)))
    neg = tuple(Segment(line, a + k, a + k) for k in range(n))
    return LanglandsParam(neg, TemperedParam(ds))


def _same_shape(p: LanglandsParam, q: LanglandsParam) -> bool:
    # epsilon data is opaque and ignored when comparing shapes
    return (
        p.neg == q.neg
        and p.tempered.ds.jord == q.tempered.ds.jord
        and p.tempered.signed == q.tempered.signed
        and p.tempered.extra == q.tempered.extra
    )


def classify_steinberg(param: LanglandsParam, n: int) -> SteinbergClass:
    if n <= 0:
        raise ParameterError("n must be positive")
    line, sigma = param.line, param.sigma
    if not line.self_dual:
        return SteinbergClass.OTHER
    target = normalized_points(steinberg_support(line, sigma, n).elements())
    if infinitesimal_character(param)[0] != target:
        return SteinbergClass.OTHER
    if _same_shape(param, _steinberg_shape(line, sigma, n)):
        return SteinbergClass.STEINBERG
    if _same_shape(param, _dual_candidate_shape(line, sigma, n)):
        return SteinbergClass.DUAL_CANDIDATE
    return SteinbergClass.OTHER


def _compositions(items: list):
    """All ways to cut a list into consecutive nonempty runs."""
    if not items:
        yield []
        return
    for k in range(1, len(items) + 1):
        for rest in _compositions(items[k:]):
            yield [items[:k]] + rest


def steinberg_shapes(line: CuspidalSymbol, sigma: SigmaSupport, n: int) -> list[LanglandsParam]:
    """Every standard-parameter shape whose infinitesimal character is the
    Steinberg support.

    Shapes carry no epsilon data; Jordan blocks and Langlands segments are
    written with nonnegative (resp. positive) exponent, which fixes the
    representative modulo contragredience.
    """
    xs = sorted(p.x for p in steinberg_support(line, sigma, n))
    shapes = []
    for runs in _compositions(xs):
        segs = [Segment(line, r[0], r[-1]) for r in runs]
        # roles: 0 Langlands, 1 Jordan block, 2/3 signed +/-, 4 extra
        for roles in product(range(5), repeat=len(segs)):
            neg, jord, signed, extra = [], [], [], []
            ok = True
            for s, role in zip(segs, roles):
                if role == 0:
                    ok &= e_exponent(s) > 0
                    neg.append(s)
                elif role == 1:
                    jord.append(s)
                elif role in (2, 3):
                    signed.append((s, 1 if role == 2 else -1))
                else:
                    extra.append(s)
            if not ok:
                continue
            try:
                ds = DiscreteSeriesParam(line, tuple(jord), sigma=sigma)
                shapes.append(LanglandsParam(tuple(neg), TemperedParam(ds, tuple(signed), tuple(extra))))
            except (ParameterError, ValueError):
                continue
    return shapes

