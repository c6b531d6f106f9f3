"""Unitarizability of irreducible generic representations.

A generic irreducible is ``delta_1 x ... x delta_k x| tau`` with positive
nonincreasing exponents and tau generic tempered.  The decision looks at the
multiset of exponents attached to each unitary square-integrable base and
checks the Hermitian condition, the small-exponent condition, or Barbasch's
interleaving conditions, depending on the base.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .glalg import Segment, e_exponent, segments_linked
from .lines import CuspidalSymbol
from .params import (
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    ParameterError,
    SigmaSupport,
    TemperedParam,
    langlands_normal_form,
    langlands_order,
    on_line,
    reduces_against,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GenericParam:
    deltas: tuple = ()
    tempered: tuple = ()
    sigma: SigmaSupport = SigmaSupport("sigma")

    def __post_init__(self):
        for d in self.deltas:
            if e_exponent(d) <= 0:
                raise ParameterError(f"{d!r}: generic Langlands segments need a positive exponent")
        items = self.tempered.items() if isinstance(self.tempered, Mapping) else self.tempered
        layers = {}
        for key, tau in items:
            if tau.sigma != self.sigma:
                raise ParameterError(f"tempered layer on {key} has sigma {tau.sigma!r}, expected {self.sigma!r}")
            if tau.line.line_id != key or key in layers:
                raise ParameterError(f"bad tempered layer key {key}")
            if tau.segments():
                layers[key] = tau
        object.__setattr__(self, "deltas", langlands_order(self.deltas))
        object.__setattr__(self, "tempered", tuple(sorted(layers.items())))

    def tau(self, line: CuspidalSymbol) -> TemperedParam:
        """Tempered layer on ``line``; the trivial one when nothing is stored."""
        for key, t in self.tempered:
            if key == line.line_id:
                return t
        canonical = line if line.id == line.line_id else line.dual()
        return TemperedParam(DiscreteSeriesParam(canonical, sigma=self.sigma))

    def line_ids(self) -> frozenset:
        return frozenset(d.cusp.line_id for d in self.deltas) | frozenset(k for k, _ in self.tempered)

    def line_symbols(self) -> dict:
        out = {}
        for d in self.deltas:
            out.setdefault(d.cusp.line_id, d.cusp)
        for k, t in self.tempered:
            out[k] = t.line
        return out


@dataclass(frozen=True)
class ExponentMultiset:
    base: Segment
    exps: tuple = ()

    def __post_init__(self):
        if any(x <= 0 for x in self.exps):
            raise ParameterError("exponents must be positive")
        object.__setattr__(self, "exps", tuple(sorted(self.exps)))


@dataclass(frozen=True)
class Witness:
    condition: str
    base: Segment
    details: str = ""


def exponents_for(p: GenericParam, base: Segment) -> ExponentMultiset:
    if e_exponent(base) != 0:
        raise ParameterError(f"base {base!r} is not unitary (exponent {e_exponent(base)})")
    exps = [e_exponent(d) for d in p.deltas if d.centered() == base]
    return ExponentMultiset(base, tuple(exps))


def half_red(base: Segment) -> bool:
    """Reducibility of nu^(1/2) delta(base) x| 1 on a self-dual line."""
    if not base.cusp.self_dual:
        raise ParameterError(f"{base.cusp.id} is not self-dual")
    if base.cusp.alpha.denominator == 1:
        return base.card % 2 == 0
    return base.card % 2 == 1


def delta_tau_reducible(base: Segment, tau: TemperedParam) -> bool:
    if not on_line(base, tau.line):
        raise ParameterError(f"{base!r} is not on the line of the tempered layer ({tau.line.id})")
    if not base.is_symmetric():
        raise ParameterError(f"{base!r} is not symmetric about 0")
    return reduces_against(base, tau.blocks(), tau.extra)


def _bases(p: GenericParam) -> list[Segment]:
    found = {}
    for d in p.deltas:
        c = d.centered()
        for s in (c, c.contragredient()):
            found[s.sort_key()] = s
    return [found[k] for k in sorted(found)]


def uses_small_exponent_branch(base: Segment) -> bool:
    """True for the branch requiring all exponents below 1/2; False for
    Barbasch's conditions.  Exactly one branch applies to every base."""
    return (not base.cusp.self_dual) or half_red(base)


def _fmt(xs) -> str:
    return "{" + ", ".join(str(x) for x in xs) + "}"


def _barbasch(exps: tuple, base: Segment, reducible: bool) -> Witness | None:
    if any(x >= 1 for x in exps):
        return Witness("3-range", base, f"exponent >= 1 in {_fmt(exps)}")
    alphas = [x for x in exps if x <= HALF]
    betas = [x for x in exps if x > HALF]
    if len(set(betas)) != len(betas):
        return Witness("3-shape", base, f"repeated exponent above 1/2 in {_fmt(exps)}")
    k, l = len(alphas), len(betas)
    for a in alphas:
        for b in betas:
            if a + b == 1:
                return Witness("3a", base, f"{a} + {b} = 1")
    if k > 1 and alphas[k - 2] == HALF:
        return Witness("3a", base, "1/2 occurs more than once among exponents <= 1/2")
    if l > 0:
        count = sum(1 for a in alphas if a > 1 - betas[0])
        if count % 2:
            return Witness("3b", base, f"{count} exponents exceed 1 - {betas[0]}")
    for j in range(l - 1):
        lo, hi = 1 - betas[j + 1], 1 - betas[j]
        count = sum(1 for a in alphas if lo < a < hi)
        if count % 2 == 0:
            return Witness("3c", base, f"{count} exponents strictly between {lo} and {hi}")
    if reducible and (k + l) % 2:
        return Witness("3d", base, f"k + l = {k + l} is odd and delta x| tau reduces")
    return None


def is_unitarizable_generic(p: GenericParam) -> tuple[bool, Witness | None]:
    for base in _bases(p):
        exps = exponents_for(p, base).exps
        dual_exps = exponents_for(p, base.contragredient()).exps
        if exps != dual_exps:
            return False, Witness("1", base, f"E(delta) = {_fmt(exps)} but E(delta~) = {_fmt(dual_exps)}")
        if uses_small_exponent_branch(base):
            bad = [x for x in exps if not (0 < x < HALF)]
            if bad:
                return False, Witness("2", base, f"exponents {_fmt(bad)} not in (0, 1/2)")
        else:
            reducible = delta_tau_reducible(base, p.tau(base.cusp))
            w = _barbasch(exps, base, reducible)
            if w is not None:
                return False, w
    return True, None


def x_project_generic(p: GenericParam, line) -> GenericParam:
    line_id = line.line_id if isinstance(line, CuspidalSymbol) else line
    return GenericParam(
        tuple(d for d in p.deltas if d.cusp.line_id == line_id),
        tuple((k, t) for k, t in p.tempered if k == line_id),
        p.sigma,
    )


def glue_generic(parts: list[GenericParam]) -> GenericParam:
    sigma = parts[0].sigma if parts else SigmaSupport("sigma")
    deltas, tempered = [], []
    for q in parts:
        if q.sigma != sigma:
            raise ParameterError("sigma mismatch while gluing generic parameters")
        deltas.extend(q.deltas)
        tempered.extend(q.tempered)
    return GenericParam(tuple(deltas), tuple(tempered), sigma)


def preservation_check(p: GenericParam) -> bool:
    whole = is_unitarizable_generic(p)[0]
    parts = all(is_unitarizable_generic(x_project_generic(p, k))[0] for k in p.line_ids())
    return whole == parts


def contragredient_generic(p: GenericParam) -> GenericParam:
    flipped = [d.contragredient() for d in p.deltas]
    return GenericParam(langlands_normal_form(flipped), p.tempered, p.sigma)


def swap_partners(p: GenericParam) -> GenericParam:
    """Relabel every segment by the contragredient symbol, keeping coordinates."""
    return GenericParam(tuple(d.on(d.cusp.dual()) for d in p.deltas), p.tempered, p.sigma)


def generic_to_family(p: GenericParam) -> JantzenFamily:
    symbols = p.line_symbols()
    params = []
    for key, line in symbols.items():
        params.append(LanglandsParam(tuple(d for d in p.deltas if d.cusp.line_id == key), p.tau(line)))
    return JantzenFamily.build(p.sigma, params)


def family_to_generic(family: JantzenFamily) -> GenericParam:
    deltas = [d for _, q in family.per_line for d in q.neg]
    return GenericParam(tuple(deltas), tuple((k, q.tempered) for k, q in family.per_line), family.sigma)


def _pairwise_unlinked(segs) -> bool:
    """Necessary condition for a standard module with Langlands segments
    ``segs`` to be irreducible: no two segments are linked, directly or
    after taking a contragredient."""
    segs = list(segs)
    for i, s in enumerate(segs):
        if segments_linked(s, s.contragredient()):
            return False
        for t in segs[i + 1:]:
            if segments_linked(s, t) or segments_linked(s, t.contragredient()):
                return False
    return True


def genericity_note(family: JantzenFamily) -> tuple[bool, dict]:
    """Flag for "can be written in generic standard-module shape", for the
    whole family and per line.

    Linkage never crosses lines, so the whole-family flag must equal the
    conjunction of the per-line flags.
    """
    per_line = {k: _pairwise_unlinked(q.neg) for k, q in family.per_line}
    whole = _pairwise_unlinked(d for _, q in family.per_line for d in q.neg)
    return whole, per_line
