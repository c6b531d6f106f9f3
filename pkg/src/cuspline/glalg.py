"""Segments, standard GL modules and the comultiplications m* and M*.

Everything here works at the level of standard modules
``delta(D_1) x ... x delta(D_k)``; products in R are commutative, so
standard labels are compared after sorting their factors.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import attrgetter
from typing import Iterable

from .formal import FormalSum
from .lines import CuspidalSymbol, LinePoint, LineSet, as_rational, format_rational


@dataclass(frozen=True, eq=False)
class Segment:
    """The segment ``[b, e]`` on ``cusp``: the points nu^b rho, ..., nu^e rho."""

    cusp: CuspidalSymbol
    b: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "e", as_rational(self.e))
        length = self.e - self.b
        if length < 0 or length.denominator != 1:
            raise ValueError(f"[{self.b},{self.e}] is not a segment: e - b must be a nonnegative integer")
        b, e = self.b, self.e
        key = (self.cusp.id, b.numerator, b.denominator, e.numerator, e.denominator)
        object.__setattr__(self, "_key", key)
        # float prefixes make sorting cheap; the exact ints keep the order total
        object.__setattr__(self, "_order", (key[0], float(b), float(e)) + key[1:])
        object.__setattr__(self, "_hash", hash(key))

    @property
    def card(self) -> int:
        return int(self.e - self.b) + 1

    def points(self) -> list[LinePoint]:
        return [LinePoint(self.cusp, self.b + k) for k in range(self.card)]

    def contragredient(self) -> Segment:
        return Segment(self.cusp.dual(), -self.e, -self.b)

    def centered(self) -> Segment:
        """The unitary translate (exponent 0) of this segment."""
        shift = e_exponent(self)
        return Segment(self.cusp, self.b - shift, self.e - shift)

    def on(self, cusp: CuspidalSymbol) -> Segment:
        return Segment(cusp, self.b, self.e)

    def is_symmetric(self) -> bool:
        return self.b == -self.e

    def contains_point(self, x: Fraction) -> bool:
        return self.b <= x <= self.e and (x - self.b).denominator == 1

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        try:
            key = other._key
        except AttributeError:
            return NotImplemented
        return self._key == key and (self.cusp is other.cusp or self.cusp == other.cusp)

    def sort_key(self):
        return (self.cusp.id, self.b, self.e)

    def __lt__(self, other: Segment):
        return self._order < other._order

    def __repr__(self):
        return f"[{format_rational(self.b)},{format_rational(self.e)}]^{self.cusp.id}"


_ORDER = attrgetter("_order")


def segment_or_none(cusp: CuspidalSymbol, b: Fraction, e: Fraction) -> Segment | None:
    """``[b, e]`` with ``e = b - 1`` read as the empty segment (the unit 1)."""
    if e < b:
        return None
    return Segment(cusp, b, e)


def e_exponent(s: Segment) -> Fraction:
    return (s.b + s.e) / 2


@dataclass(frozen=True, eq=False)
class StandardGL:
    """Ordered product of delta(segment) labels; the empty product is 1."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "_hash", hash(self.factors))

    @classmethod
    def of(cls, *segs: Segment | None) -> StandardGL:
        return cls(tuple(sorted((s for s in segs if s is not None), key=_ORDER)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not StandardGL:
            return NotImplemented
        return self._hash == other._hash and self.factors == other.factors

    def canonical(self) -> StandardGL:
        return StandardGL(tuple(sorted(self.factors, key=_ORDER)))

    def __mul__(self, other: StandardGL) -> StandardGL:
        if not other.factors:
            return self
        if not self.factors:
            return other
        return StandardGL(tuple(sorted(self.factors + other.factors, key=_ORDER)))

    def __bool__(self):
        return bool(self.factors)

    def __len__(self):
        return len(self.factors)

    def degree(self) -> int:
        return sum(s.card * s.cusp.degree for s in self.factors)

    def sort_key(self):
        return (len(self.factors), tuple(s.sort_key() for s in self.factors))

    def __repr__(self):
        if not self.factors:
            return "1"
        return "x".join(repr(s) for s in self.factors)


ONE = StandardGL()


def _tensor_concat(t1: tuple, t2: tuple) -> tuple:
    return (t1[0] * t2[0], t1[1] * t2[1])


@lru_cache(maxsize=4096)
def _m_star_segment(s: Segment) -> FormalSum:
    terms = []
    for k in range(-1, s.card):
        c = s.b + k
        left = segment_or_none(s.cusp, c + 1, s.e)
        right = segment_or_none(s.cusp, s.b, c)
        terms.append(((StandardGL.of(left), StandardGL.of(right)), 1))
    return FormalSum(terms)


@lru_cache(maxsize=4096)
def _M_star_segment(s: Segment) -> FormalSum:
    terms = []
    dual = s.cusp.dual()
    for ki in range(-1, s.card):
        i = s.b + ki
        for kj in range(ki, s.card):
            j = s.b + kj
            # delta([b, i])~ lives on the partner with coordinates [-i, -b]
            reflected = segment_or_none(dual, -i, -s.b)
            kept = segment_or_none(s.cusp, j + 1, s.e)
            middle = segment_or_none(s.cusp, i + 1, j)
            terms.append(((StandardGL.of(reflected, kept), StandardGL.of(middle)), 1))
    return FormalSum(terms)


_UNIT = FormalSum.single((ONE, ONE))


# Both maps are multiplicative, so sorted prefixes are cached and shared.
@lru_cache(maxsize=1 << 16)
def _m_star_canonical(factors: tuple) -> FormalSum:
    if not factors:
        return _UNIT
    return _m_star_canonical(factors[:-1]).product(_m_star_segment(factors[-1]), _tensor_concat)


@lru_cache(maxsize=1 << 16)
def _M_star_canonical(factors: tuple) -> FormalSum:
    if not factors:
        return _UNIT
    return _M_star_canonical(factors[:-1]).product(_M_star_segment(factors[-1]), _tensor_concat)


def m_star(beta: StandardGL) -> FormalSum:
    """Comultiplication on standard GL modules, as a sum over (left, right)."""
    return _m_star_canonical(beta.canonical().factors)


def M_star(beta: StandardGL) -> FormalSum:
    """The classical-induction comultiplication ``M*`` on standard GL modules."""
    return _M_star_canonical(beta.canonical().factors)


def support(beta: StandardGL | Iterable[Segment]) -> Counter:
    segs = beta.factors if isinstance(beta, StandardGL) else beta
    out: Counter = Counter()
    for s in segs:
        out.update(s.points())
    return out


def support_symbols(beta: StandardGL) -> frozenset:
    return frozenset(s.cusp.id for s in beta.factors)


def filter_by_support(total: FormalSum, left_part: LineSet, right_part: LineSet) -> FormalSum:
    """Keep the terms with left support in ``left_part`` and right support in
    ``right_part``.  Only the GL components of a term are inspected."""
    left_ids, right_ids = left_part.ids, right_part.ids

    def keep(term):
        left, right = term[0], term[1]
        return support_symbols(left) <= left_ids and _right_symbols(right) <= right_ids

    return total.filter(keep)


def _right_symbols(right) -> frozenset:
    if isinstance(right, StandardGL):
        return support_symbols(right)
    return right.symbol_ids()


def segments_linked(s1: Segment, s2: Segment) -> bool:
    if s1.cusp.id != s2.cusp.id or (s1.b - s2.b).denominator != 1:
        return False
    if max(s1.b, s2.b) > min(s1.e, s2.e) + 1:
        return False
    contains = (s1.b <= s2.b and s2.e <= s1.e) or (s2.b <= s1.b and s1.e <= s2.e)
    return not contains


def apply_left(total: FormalSum, op) -> FormalSum:
    """``(op (x) id)`` on a sum of tuples, expanding the first component."""
    def expand(term):
        first, rest = term[0], term[1:]
        return op(first).map(lambda k: k + rest)

    return total.flat_map(expand)


def apply_right(total: FormalSum, op) -> FormalSum:
    """``(id (x) op)``, expanding the last component."""
    def expand(term):
        init, last = term[:-1], term[-1]
        return op(last).map(lambda k: init + k)

    return total.flat_map(expand)


def counit_left(total: FormalSum) -> FormalSum:
    """Collapse terms whose left factor is 1 onto their right factor."""
    return FormalSum((term[1], m) for term, m in total if not term[0])


def counit_right(total: FormalSum) -> FormalSum:
    return FormalSum((term[0], m) for term, m in total if not term[1])
