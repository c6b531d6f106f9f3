"""Finitely supported integer combinations (Grothendieck-group values)."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Iterator


def sort_key(obj):
    """Total order used for canonical output: objects expose ``sort_key``,
    tuples are compared componentwise."""
    if isinstance(obj, tuple):
        return tuple(sort_key(o) for o in obj)
    return obj.sort_key()


class FormalSum:
    """Map from hashable terms to nonzero integer multiplicities.

    Terms are usually tuples such as ``(left, right)`` for R (x) R.  Iteration
    is always in canonical order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Hashable, int]] | dict | None = None):
        self._terms: dict = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, dict) else terms
        for key, mult in items:
            self._add(key, mult)

    @classmethod
    def single(cls, key, mult: int = 1) -> FormalSum:
        return cls([(key, mult)])

    def _add(self, key, mult: int):
        m = self._terms.get(key, 0) + mult
        if m:
            self._terms[key] = m
        else:
            self._terms.pop(key, None)

    def __iter__(self) -> Iterator[tuple]:
        for key in sorted(self._terms, key=sort_key):
            yield key, self._terms[key]

    def keys(self):
        return [k for k, _ in self]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, key) -> int:
        return self._terms.get(key, 0)

    def __contains__(self, key):
        return key in self._terms

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: FormalSum) -> FormalSum:
        out = FormalSum(self._terms)
        for k, m in other._terms.items():
            out._add(k, m)
        return out

    def __rmul__(self, scalar: int) -> FormalSum:
        return FormalSum({k: scalar * m for k, m in self._terms.items()})

    def total(self) -> int:
        return sum(self._terms.values())

    def map(self, fn: Callable) -> FormalSum:
        """Push terms through ``fn`` (key -> key), merging collisions."""
        out = FormalSum()
        for k, m in self._terms.items():
            out._add(fn(k), m)
        return out

    def flat_map(self, fn: Callable[..., FormalSum]) -> FormalSum:
        """Linear extension of ``fn`` (key -> FormalSum)."""
        out = FormalSum()
        for k, m in self._terms.items():
            for k2, m2 in fn(k)._terms.items():
                out._add(k2, m * m2)
        return out

    def filter(self, pred: Callable) -> FormalSum:
        return FormalSum({k: m for k, m in self._terms.items() if pred(k)})

    def product(self, other: FormalSum, combine: Callable) -> FormalSum:
        """Bilinear product with term-level ``combine(k1, k2) -> key``."""
        out = FormalSum()
        for k1, m1 in self._terms.items():
            for k2, m2 in other._terms.items():
                out._add(combine(k1, k2), m1 * m2)
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{m}*{k!r}" if m != 1 else repr(k) for k, m in self)
