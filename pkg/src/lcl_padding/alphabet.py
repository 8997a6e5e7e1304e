"""Finite label alphabets.

Alphabets of lifted problems are products of products, far too large to
materialize, so membership, size and a canonical first element are computed
structurally.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Iterable, Iterator, Sequence


class Alphabet:
    """Base class for a finite set of hashable labels."""

    size: int

    def __contains__(self, x: Any) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def __iter__(self) -> Iterator[Any]:  # pragma: no cover - abstract
        raise NotImplementedError

    def first(self) -> Any:
        """Canonical smallest element, used for deterministic completion."""
        raise NotImplementedError  # pragma: no cover

    def __len__(self) -> int:
        return self.size


class Finite(Alphabet):
    def __init__(self, values: Iterable[Any]):
        self.values = tuple(dict.fromkeys(values))
        self._set = frozenset(self.values)
        self.size = len(self.values)

    def __contains__(self, x):
        try:
            return x in self._set
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.values)

    def first(self):
        if not self.values:
            raise ValueError("empty alphabet has no first element")
        return self.values[0]

    def __repr__(self):
        return f"Finite({list(self.values)!r})"


class Product(Alphabet):
    """Cartesian product; elements are built with ``ctor`` (tuple by default)."""

    def __init__(self, factors: Sequence[Alphabet], ctor: Callable[..., Any] | None = None):
        self.factors = tuple(factors)
        self.ctor = ctor
        size = 1
        for f in self.factors:
            size *= f.size
        self.size = size

    def _make(self, parts):
        return self.ctor(*parts) if self.ctor is not None else tuple(parts)

    def __contains__(self, x):
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            return False
        if self.ctor is not None and isinstance(self.ctor, type) and not isinstance(x, self.ctor):
            return False
        if self.ctor is None and type(x) is not tuple:
            return False
        return all(v in f for v, f in zip(x, self.factors))

    def __iter__(self):
        for parts in itertools.product(*self.factors):
            yield self._make(parts)

    def first(self):
        return self._make([f.first() for f in self.factors])

    def __repr__(self):
        name = getattr(self.ctor, "__name__", "tuple")
        return f"Product[{name}]({', '.join(map(repr, self.factors))})"


def power(base: Alphabet, k: int) -> Product:
    """Tuples of length ``k`` over ``base``."""
    return Product([base] * k)


class Union(Alphabet):
    """Disjoint union; the parts must not share elements."""

    def __init__(self, parts: Sequence[Alphabet]):
        self.parts = tuple(parts)
        self.size = sum(p.size for p in self.parts)

    def __contains__(self, x):
        return any(x in p for p in self.parts)

    def __iter__(self):
        for p in self.parts:
            yield from p

    def first(self):
        return self.parts[0].first()

    def __repr__(self):
        return " | ".join(map(repr, self.parts))


class Powerset(Alphabet):
    """All frozensets of elements of ``base``."""

    def __init__(self, base: Alphabet, max_card: int | None = None):
        self.base = base
        self.max_card = max_card
        if max_card is None:
            self.size = 2 ** base.size
        else:
            from math import comb
            self.size = sum(comb(base.size, k) for k in range(min(max_card, base.size) + 1))

    def __contains__(self, x):
        if not isinstance(x, frozenset):
            return False
        if self.max_card is not None and len(x) > self.max_card:
            return False
        return all(v in self.base for v in x)

    def __iter__(self):
        vals = list(self.base)
        top = len(vals) if self.max_card is None else min(self.max_card, len(vals))
        for k in range(top + 1):
            for combo in itertools.combinations(vals, k):
                yield frozenset(combo)

    def first(self):
        return frozenset()

    def __repr__(self):
        return f"Powerset({self.base!r})"


UNIT = Finite([None])
