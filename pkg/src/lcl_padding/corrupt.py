"""Single-label corruptions that stay inside the output alphabets.

A corruption picks one node, edge or half-edge and changes one leaf field of
its label (descending through products, unions and nested lists), so the
result is still a well-typed labeling and any rejection comes from a
constraint rather than from an alphabet check.
"""

from __future__ import annotations

from typing import Any, NamedTuple

import numpy as np

from .alphabet import Alphabet, Finite, Powerset, Product, Union
from .graph import Labeling, PortedMultigraph


class Corruption(NamedTuple):
    where: str  # "node", "edge" or "half"
    element: Any
    path: tuple  # field names / indices from the label root to the changed leaf
    old: Any
    new: Any
    labels: Labeling


def random_element(alpha: Alphabet, rng: np.random.Generator) -> Any:
    if isinstance(alpha, Finite):
        return alpha.values[int(rng.integers(alpha.size))]
    if isinstance(alpha, Product):
        return alpha._make([random_element(f, rng) for f in alpha.factors])
    if isinstance(alpha, Union):
        parts = [p for p in alpha.parts if p.size]
        return random_element(parts[int(rng.integers(len(parts)))], rng)
    if isinstance(alpha, Powerset):
        picks = {random_element(alpha.base, rng) for _ in range(int(rng.integers(3)))}
        return frozenset(picks)
    raise TypeError(f"cannot sample from {alpha!r}")


def _names(alpha: Product) -> list:
    fields = getattr(alpha.ctor, "_fields", None)
    return list(fields) if fields else list(range(len(alpha.factors)))


def perturb(x: Any, alpha: Alphabet, rng: np.random.Generator) -> tuple[tuple, Any]:
    """A different element of ``alpha`` differing from ``x`` in one leaf; returns ``(path, new)``."""
    if isinstance(alpha, Finite):
        others = [v for v in alpha.values if v != x]
        if not others:
            raise ValueError("single-letter alphabet cannot be perturbed")
        return (), others[int(rng.integers(len(others)))]
    if isinstance(alpha, Product):
        open_ = [i for i, f in enumerate(alpha.factors) if f.size > 1]
        if not open_:
            raise ValueError("product of single-letter alphabets cannot be perturbed")
        i = open_[int(rng.integers(len(open_)))]
        sub, new = perturb(x[i], alpha.factors[i], rng)
        parts = list(x)
        parts[i] = new
        return (_names(alpha)[i],) + sub, alpha._make(parts)
    if isinstance(alpha, Union):
        home = next(k for k, p in enumerate(alpha.parts) if x in p)
        away = [k for k, p in enumerate(alpha.parts) if k != home and p.size]
        if away and (alpha.parts[home].size == 1 or rng.random() < 0.5):
            k = away[int(rng.integers(len(away)))]
            return (f"part{k}",), random_element(alpha.parts[k], rng)
        sub, new = perturb(x, alpha.parts[home], rng)
        return (f"part{home}",) + sub, new
    if isinstance(alpha, Powerset):
        v = random_element(alpha.base, rng)
        return ("toggle", v), x ^ frozenset([v])
    raise TypeError(f"cannot perturb within {alpha!r}")


def corrupt(g: PortedMultigraph, labels: Labeling, sigma, rng: np.random.Generator) -> Corruption:
    """Change one field of one uniformly chosen label; ``sigma`` holds the output alphabets."""
    pools = [("node", sorted(labels.nodes), sigma.v), ("edge", sorted(labels.edges), sigma.e),
             ("half", sorted(labels.halves), sigma.b)]
    pools = [p for p in pools if p[1] and p[2].size > 1]
    total = sum(len(p[1]) for p in pools)
    k = int(rng.integers(total))
    for where, keys, alpha in pools:
        if k < len(keys):
            break
        k -= len(keys)
    key = keys[k]
    layer = {"node": "nodes", "edge": "edges", "half": "halves"}[where]
    old = getattr(labels, layer)[key]
    path, new = perturb(old, alpha, rng)
    out = labels.copy()
    getattr(out, layer)[key] = new
    return Corruption(where, key, path, old, new, out)
