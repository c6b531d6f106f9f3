"""Cuspidal symbols, twisted points on a line, and line sets.

A cuspidal symbol is an opaque stand-in for a unitary cuspidal representation
of a general linear group.  A line is the set of all twists of a symbol
together with the twists of its contragredient, so it is identified by the
unordered pair ``{rho, partner(rho)}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator


class ConfigurationError(ValueError):
    """Registry or symbol data is inconsistent."""


class InvalidPartition(ValueError):
    """Two parts of a partition overlap."""


def as_rational(value) -> Fraction:
    """Exact rational from an int, Fraction, or a ``"p/q"`` / ``"n"`` string.

    Floats and decimal strings are refused; they are never exact enough.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if type(value) is Fraction:
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise ValueError(f"not an exact rational literal: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {value!r}") from None
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class CuspidalSymbol:
    id: str
    self_dual: bool = True
    alpha: Fraction = Fraction(0)
    partner: str | None = None
    degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        if self.alpha < 0 or self.alpha.denominator not in (1, 2):
            raise ConfigurationError(f"{self.id}: alpha must lie in (1/2)Z and be >= 0, got {self.alpha}")
        if self.self_dual and self.partner is not None:
            raise ConfigurationError(f"{self.id}: a self-dual symbol has no partner")
        if not self.self_dual:
            if self.partner is None:
                raise ConfigurationError(f"{self.id}: non-self-dual symbol needs a partner")
            if self.partner == self.id:
                raise ConfigurationError(f"{self.id}: partnering must be irreflexive")
        if self.degree < 1:
            raise ConfigurationError(f"{self.id}: degree unit must be positive")

    def __hash__(self):
        return hash(self.id)

    def dual(self) -> CuspidalSymbol:
        """The contragredient symbol.

        Partners share alpha and degree (the registry enforces this), so the
        partner can be rebuilt from the symbol alone.
        """
        if self.self_dual:
            return self
        return CuspidalSymbol(self.partner, False, self.alpha, self.id, self.degree)

    @property
    def line_id(self) -> str:
        if self.self_dual:
            return self.id
        return min(self.id, self.partner)

    def __repr__(self):
        return f"Cusp({self.id})"


class Registry:
    """Lookup table of cuspidal symbols, validated for partner consistency."""

    def __init__(self, symbols: Iterable[CuspidalSymbol] = ()):
        self._by_id: dict[str, CuspidalSymbol] = {}
        for sym in symbols:
            if sym.id in self._by_id:
                raise ConfigurationError(f"duplicate symbol id {sym.id!r}")
            self._by_id[sym.id] = sym
        for sym in self._by_id.values():
            if sym.self_dual:
                continue
            other = self._by_id.get(sym.partner)
            if other is None:
                raise ConfigurationError(f"{sym.id}: unknown partner id {sym.partner!r}")
            if other != sym.dual():
                raise ConfigurationError(f"{sym.id}: partner {other.id} is not consistent (involution, alpha, degree)")

    def __getitem__(self, ident: str) -> CuspidalSymbol:
        try:
            return self._by_id[ident]
        except KeyError:
            raise ConfigurationError(f"unknown cuspidal symbol {ident!r}") from None

    def __contains__(self, ident) -> bool:
        return ident in self._by_id

    def __iter__(self) -> Iterator[CuspidalSymbol]:
        return iter(self._by_id.values())

    def __len__(self):
        return len(self._by_id)

    def line(self, ident: str) -> LineSet:
        return LineSet.of(self[ident])

    def check_partner(self, sym: CuspidalSymbol) -> CuspidalSymbol:
        dual = sym.dual()
        if dual.id not in self._by_id:
            raise ConfigurationError(f"{sym.id}: unknown partner id {dual.id!r}")
        return self._by_id[dual.id]


@dataclass(frozen=True, order=True)
class LinePoint:
    cusp: CuspidalSymbol
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))

    def __repr__(self):
        return f"nu^{format_rational(self.x)} {self.cusp.id}"


def contragredient_point(p: LinePoint, registry: Registry | None = None) -> LinePoint:
    cusp = registry.check_partner(p.cusp) if registry is not None else p.cusp.dual()
    return LinePoint(cusp, -p.x)


def same_line(p: LinePoint, q: LinePoint) -> bool:
    return q.cusp.id in (p.cusp.id, p.cusp.dual().id)


def normalize_point(p: LinePoint) -> LinePoint:
    """Representative of ``p`` modulo contragredience: nonnegative twist,
    and on a non-self-dual line at twist 0 the symbol with the smaller id."""
    if p.x < 0:
        return contragredient_point(p)
    if p.x == 0 and p.cusp.id != p.cusp.line_id:
        return LinePoint(p.cusp.dual(), p.x)
    return p


@dataclass(frozen=True)
class LineSet:
    """A finite set of cuspidal symbols.

    Well-formed line sets are closed under partnering; ``LineSet.of`` closes
    automatically.  Unclosed sets can still be built so that partition
    checks can reject them.
    """

    symbols: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, *syms: CuspidalSymbol) -> LineSet:
        out = set()
        for s in syms:
            out.add(s)
            out.add(s.dual())
        return cls(frozenset(out))

    @cached_property
    def ids(self) -> frozenset:
        return frozenset(s.id for s in self.symbols)

    @cached_property
    def line_ids(self) -> frozenset:
        return frozenset(s.line_id for s in self.symbols)

    def is_self_contragredient(self) -> bool:
        return all(s.dual() in self.symbols for s in self.symbols)

    def contains_symbol(self, sym: CuspidalSymbol) -> bool:
        return sym.id in self.ids

    def contains_line(self, line_id: str) -> bool:
        return line_id in self.line_ids

    def __or__(self, other: LineSet) -> LineSet:
        return LineSet(self.symbols | other.symbols)

    def isdisjoint(self, other: LineSet) -> bool:
        return self.ids.isdisjoint(other.ids)

    def __len__(self):
        return len(self.line_ids)

    def __repr__(self):
        return "LineSet{" + ",".join(sorted(self.ids)) + "}"


def is_regular_partition(x1: LineSet, x2: LineSet, support: Iterable[LinePoint] = ()) -> bool:
    """Whether no point of ``support`` in one part reaches the other part by
    a nu-shift or by contragredience.

    nu-shifts keep the symbol and contragredience moves to the partner, so
    once both parts are closed under partnering the support cannot matter;
    it is accepted for the general signature only.
    """
    if not x1.isdisjoint(x2):
        raise InvalidPartition(f"parts overlap on {sorted(x1.ids & x2.ids)}")
    return x1.is_self_contragredient() and x2.is_self_contragredient()


def is_regular_partition_many(parts: Iterable[LineSet], support: Iterable[LinePoint] = ()) -> bool:
    parts = list(parts)
    support = list(support)
    return all(
        is_regular_partition(parts[i], parts[j], support)
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
    )
