"""Input labels of gadget graphs and their alphabets."""

from __future__ import annotations

from typing import NamedTuple

from ..alphabet import Finite, Product
from ..codec import register

PARENT, RIGHT, LEFT, LCHILD, RCHILD, UP = "Parent", "Right", "Left", "LChild", "RChild", "Up"
SUB_LABELS = (PARENT, RIGHT, LEFT, LCHILD, RCHILD, UP)
CENTER = 0
NOPORT = 0


def down(i: int) -> str:
    return f"Down_{i}"


def down_index(label: str) -> int | None:
    """Index of a ``Down_i`` label, or None for any other label."""
    if isinstance(label, str) and label.startswith("Down_"):
        try:
            return int(label[5:])
        except ValueError:
            return None
    return None


def half_labels(delta: int) -> tuple[str, ...]:
    return SUB_LABELS + tuple(down(i) for i in range(1, delta + 1))


def palette_size(delta: int) -> int:
    """Colors available for the distance-2 coloring."""
    return (delta + 5) ** 2 + 1


@register
class GNode(NamedTuple):
    """Node input: ``index`` 0 marks the center, ``port`` 0 means no port."""

    index: int
    port: int
    color: int

    @property
    def is_center(self) -> bool:
        return self.index == CENTER


@register
class GHalf(NamedTuple):
    """Half-edge input: structural label plus the replicated node color."""

    label: str
    color: int


def gnode_alphabet(delta: int) -> Product:
    idx = Finite(range(0, delta + 1))
    return Product([idx, idx, Finite(range(1, palette_size(delta) + 1))], GNode)


def ghalf_alphabet(delta: int) -> Product:
    return Product([Finite(half_labels(delta)), Finite(range(1, palette_size(delta) + 1))], GHalf)
