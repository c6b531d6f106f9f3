"""Parameters of irreducible representations of classical groups on one line.

Three layers: discrete series (Jordan blocks plus an opaque sign record),
tempered (signed reducing blocks plus symmetric extra segments on top of a
discrete series), and Langlands (positive-exponent segments on top of a
tempered layer).  A ``JantzenFamily`` glues one Langlands parameter per
line over a shared partial cuspidal support.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .formal import FormalSum
from .glalg import ONE, M_star, Segment, StandardGL, e_exponent, support, support_symbols
from .lines import CuspidalSymbol, LinePoint, contragredient_point, normalize_point


class ParameterError(ValueError):
    """A parameter violates its structural invariants."""


@dataclass(frozen=True)
class SigmaSupport:
    id: str
    rank: int = 0

    def __post_init__(self):
        if self.rank < 0:
            raise ParameterError(f"sigma {self.id}: rank must be >= 0")

    def symbol_ids(self) -> frozenset:
        return frozenset()

    def sort_key(self):
        return (0, self.id, self.rank)

    def __repr__(self):
        return f"sigma({self.id})"


@dataclass(frozen=True)
class ClassicalStandard:
    """The classical standard module ``gl x| sigma``."""

    gl: StandardGL
    sigma: SigmaSupport

    def symbol_ids(self) -> frozenset:
        return support_symbols(self.gl)

    def sort_key(self):
        return (1, self.gl.sort_key(), self.sigma.sort_key())

    def __repr__(self):
        return f"{self.gl!r}|x{self.sigma!r}"


def on_line(seg: Segment, line: CuspidalSymbol) -> bool:
    return seg.cusp.id in (line.id, line.dual().id)


def reduces_against(seg: Segment, blocks: Iterable[Segment], extras: Iterable[Segment] = ()) -> bool:
    """Reducibility of delta(seg) induced from a tempered representation
    whose reducing blocks are ``blocks`` and extra factors ``extras``:
    alpha must be a point of seg, and seg must be neither a block nor an
    extra factor.  Segments on non-self-dual lines never reduce."""
    if not seg.cusp.self_dual:
        return False
    if not seg.contains_point(seg.cusp.alpha):
        return False
    key = seg.sort_key()
    if any(b.sort_key() == key for b in blocks):
        return False
    return all(g.sort_key() != key for g in extras)


def _eps_key_sort(key):
    if isinstance(key, Segment):
        return (0, key.sort_key())
    return (1, tuple(s.sort_key() for s in key))


@dataclass(frozen=True)
class DiscreteSeriesParam:
    line: CuspidalSymbol
    jord: tuple = ()
    eps: tuple = ()
    sigma: SigmaSupport = SigmaSupport("sigma")

    def __post_init__(self):
        jord = tuple(sorted(self.jord))
        if len({s.sort_key() for s in jord}) != len(jord):
            raise ParameterError("Jordan blocks must be distinct")
        if jord and not self.line.self_dual:
            raise ParameterError(f"{self.line.id}: Jordan blocks need a self-dual line")
        alpha = self.line.alpha
        for s in jord:
            if s.cusp.id != self.line.id:
                raise ParameterError(f"block {s!r} is not on line {self.line.id}")
            if (s.b - alpha).denominator != 1:
                raise ParameterError(f"block {s!r} does not lie in alpha + Z (alpha = {alpha})")
        keys = {s.sort_key() for s in jord}
        eps = []
        for key, sign in self.eps:
            if sign not in (1, -1):
                raise ParameterError(f"epsilon sign must be +1 or -1, got {sign}")
            parts = (key,) if isinstance(key, Segment) else tuple(key)
            if len(parts) not in (1, 2) or any(p.sort_key() not in keys for p in parts):
                raise ParameterError(f"epsilon is declared outside Jord: {key!r}")
            eps.append((parts[0] if len(parts) == 1 else parts, sign))
        eps.sort(key=lambda kv: _eps_key_sort(kv[0]))
        if len({_eps_key_sort(k) for k, _ in eps}) != len(eps):
            raise ParameterError("epsilon declared twice on the same argument")
        object.__setattr__(self, "jord", jord)
        object.__setattr__(self, "eps", tuple(eps))

    def segments(self) -> list[Segment]:
        return list(self.jord)

    def sort_key(self):
        return (
            tuple(s.sort_key() for s in self.jord),
            tuple((_eps_key_sort(k), v) for k, v in self.eps),
        )


@dataclass(frozen=True)
class TemperedParam:
    ds: DiscreteSeriesParam
    signed: tuple = ()
    extra: tuple = ()

    def __post_init__(self):
        line = self.ds.line
        signed = tuple(sorted(((s, int(j)) for s, j in self.signed), key=lambda sj: sj[0].sort_key()))
        if len({s.sort_key() for s, _ in signed}) != len(signed):
            raise ParameterError("signed blocks must be pairwise distinct")
        for s, j in signed:
            if j not in (1, -1):
                raise ParameterError(f"sign must be +1 or -1, got {j}")
            if s.cusp.id != line.id or not s.is_symmetric():
                raise ParameterError(f"signed block {s!r} must be symmetric and on {line.id}")
            if not reduces_against(s, self.ds.jord):
                raise ParameterError(f"delta{s!r} x| ds does not reduce; it cannot carry a sign")
        signed_keys = {s.sort_key() for s, _ in signed}
        extra = []
        for g in self.extra:
            if not on_line(g, line) or not g.is_symmetric():
                raise ParameterError(f"extra segment {g!r} must be symmetric and on {line.id}")
            # on a non-self-dual line delta(G) and its contragredient induce the same thing
            g = g.on(line) if g.cusp.id != line.id else g
            if g.sort_key() not in signed_keys and reduces_against(g, self.ds.jord):
                raise ParameterError(f"extra segment {g!r} must be a signed block or irreducible against ds")
            extra.append(g)
        object.__setattr__(self, "signed", signed)
        object.__setattr__(self, "extra", tuple(sorted(extra)))

    @property
    def line(self) -> CuspidalSymbol:
        return self.ds.line

    @property
    def sigma(self) -> SigmaSupport:
        return self.ds.sigma

    def blocks(self) -> list[Segment]:
        """Segments excluded by the reducibility rule: Jordan blocks and signed blocks."""
        return list(self.ds.jord) + [s for s, _ in self.signed]

    def segments(self) -> list[Segment]:
        return self.ds.segments() + [s for s, _ in self.signed] + list(self.extra)

    def sort_key(self):
        return (
            self.ds.sort_key(),
            tuple((s.sort_key(), j) for s, j in self.signed),
            tuple(g.sort_key() for g in self.extra),
        )


def langlands_order(segs: Iterable[Segment]) -> tuple:
    """Exponents nonincreasing; ties broken by line id then segment."""
    return tuple(sorted(segs, key=lambda s: (-e_exponent(s), s.cusp.line_id, s.sort_key())))


@dataclass(frozen=True)
class LanglandsParam:
    neg: tuple = ()
    tempered: TemperedParam = None

    def __post_init__(self):
        if self.tempered is None:
            raise ParameterError("a Langlands parameter needs a tempered layer")
        line = self.tempered.line
        for s in self.neg:
            if not on_line(s, line):
                raise ParameterError(f"segment {s!r} is not on line {line.id}")
            if e_exponent(s) <= 0:
                raise ParameterError(f"Langlands segment {s!r} must have positive exponent")
        object.__setattr__(self, "neg", langlands_order(self.neg))

    @property
    def line(self) -> CuspidalSymbol:
        return self.tempered.line

    @property
    def sigma(self) -> SigmaSupport:
        return self.tempered.sigma

    def segments(self) -> list[Segment]:
        return list(self.neg) + self.tempered.segments()

    def is_trivial(self) -> bool:
        return not self.segments()

    def sort_key(self):
        return (tuple(s.sort_key() for s in self.neg), self.tempered.sort_key())


def trivial_param(line: CuspidalSymbol, sigma: SigmaSupport) -> LanglandsParam:
    return LanglandsParam((), TemperedParam(DiscreteSeriesParam(line, sigma=sigma)))


def langlands_normal_form(segs: Iterable[Segment]) -> tuple:
    """Replace negative-exponent segments by their contragredients.

    delta x| tau and delta~ x| tau agree in the Grothendieck group, so this is
    the Langlands datum of the same module.
    """
    out = []
    for s in segs:
        ex = e_exponent(s)
        if ex == 0:
            raise ParameterError(f"segment {s!r} has exponent 0 and belongs to the tempered layer")
        out.append(s if ex > 0 else s.contragredient())
    return langlands_order(out)


@dataclass(frozen=True)
class JantzenFamily:
    """An irreducible stored as its per-line components over a shared sigma.

    ``per_line`` is a sorted tuple of ``(line_id, LanglandsParam)``; lines
    carrying the trivial parameter are dropped, so sigma alone has no lines.
    """

    sigma: SigmaSupport
    per_line: tuple = ()

    def __post_init__(self):
        items = self.per_line.items() if isinstance(self.per_line, Mapping) else self.per_line
        seen = {}
        for key, param in items:
            if param.sigma != self.sigma:
                raise ParameterError(f"line {key}: sigma {param.sigma!r} differs from {self.sigma!r}")
            if param.line.line_id != key:
                raise ParameterError(f"line key {key} does not match parameter line {param.line.line_id}")
            if key in seen:
                raise ParameterError(f"line {key} listed twice")
            seen[key] = param
        object.__setattr__(
            self, "per_line", tuple(sorted((k, p) for k, p in seen.items() if not p.is_trivial()))
        )

    @classmethod
    def build(cls, sigma: SigmaSupport, params: Iterable[LanglandsParam]) -> JantzenFamily:
        return cls(sigma, tuple((p.line.line_id, p) for p in params))

    @property
    def lines(self) -> dict:
        return dict(self.per_line)

    def line_ids(self) -> frozenset:
        return frozenset(k for k, _ in self.per_line)

    def symbol_ids(self) -> frozenset:
        ids = set()
        for _, p in self.per_line:
            ids.add(p.line.id)
            ids.add(p.line.dual().id)
        return frozenset(ids)

    def __getitem__(self, line_id: str) -> LanglandsParam:
        return self.lines[line_id]

    def sort_key(self):
        return (2, self.sigma.sort_key(), tuple((k, p.sort_key()) for k, p in self.per_line))

    def __repr__(self):
        inner = "; ".join(f"{k}: {p.segments()!r}" for k, p in self.per_line)
        return f"Family({self.sigma.id} | {inner})"


def _gl_content(segs: Iterable[Segment]) -> int:
    return sum(s.card * s.cusp.degree for s in segs)


def degree(p) -> int:
    """Rank of the group the parameter lives on: r plus the GL content."""
    if isinstance(p, JantzenFamily):
        return p.sigma.rank + sum(_gl_content(q.segments()) for _, q in p.per_line)
    return p.sigma.rank + _gl_content(p.segments())


def cuspidal_support(p) -> tuple[Counter, SigmaSupport]:
    """All line points of all layers (signs forgotten), plus sigma."""
    params = [q for _, q in p.per_line] if isinstance(p, JantzenFamily) else [p]
    pts: Counter = Counter()
    for q in params:
        pts.update(support(q.segments()))
    return pts, p.sigma


def infinitesimal_character(p) -> tuple[Counter, SigmaSupport]:
    """Cuspidal support with every point taken modulo contragredience."""
    pts, sigma = cuspidal_support(p)
    out: Counter = Counter()
    for pt, m in pts.items():
        out[normalize_point(pt)] += m
    return out, sigma


def normalized_points(points: Iterable[LinePoint]) -> Counter:
    return Counter(normalize_point(p) for p in points)


def mu_star_classical(beta: StandardGL, sigma: SigmaSupport) -> FormalSum:
    """Jacquet-module sum of ``beta x| sigma``: terms ``tau (x) (tau' x| sigma)``
    over the terms ``tau (x) tau'`` of M*(beta)."""
    return M_star(beta).map(lambda t: (t[0], ClassicalStandard(t[1], sigma)))


def s_GL_standard(beta: StandardGL, sigma: SigmaSupport) -> FormalSum:
    full = mu_star_classical(beta, sigma)
    return full.filter(lambda t: not t[1].gl).map(lambda t: (t[0], t[1].sigma))


def steinberg_support(line: CuspidalSymbol, sigma: SigmaSupport, n: int) -> Counter:
    """Support of the generalized Steinberg representation on ``line``.

    Convention: the n points alpha, alpha + 1, ..., alpha + n - 1, each once.
    """
    if n <= 0:
        raise ParameterError("n must be positive")
    if not line.self_dual:
        raise ParameterError(f"{line.id}: generalized Steinberg needs a self-dual line")
    return Counter(LinePoint(line, line.alpha + k) for k in range(n))


def contragredient_langlands(p: LanglandsParam) -> LanglandsParam:
    flipped = [s.contragredient() for s in p.neg]
    # tempered classes of classical groups are self-contragredient, so the
    # tempered layer is kept as is
    return LanglandsParam(langlands_normal_form(flipped), p.tempered)


def contragredient_param(p):
    if isinstance(p, LanglandsParam):
        return contragredient_langlands(p)
    return JantzenFamily(p.sigma, tuple((k, contragredient_langlands(q)) for k, q in p.per_line))


def contragredient_support(pts: Counter) -> Counter:
    out: Counter = Counter()
    for pt, m in pts.items():
        out[contragredient_point(pt)] += m
    return out


def mu_star_one(sigma: SigmaSupport) -> FormalSum:
    return FormalSum.single((ONE, sigma))
