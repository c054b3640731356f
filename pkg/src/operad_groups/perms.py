"""Finite permutations in one-line image notation.

A permutation on n points is stored as the tuple ``imgs`` with
``imgs[i] = sigma(i)``.  Products are diagrammatic throughout the package:
``(p * q)(i) == q(p(i))``, i.e. apply ``p`` first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, SizeMismatchError


@dataclass(frozen=True)
class Permutation:
    imgs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.imgs) != list(range(len(self.imgs))):
            raise ParseError(f"not a permutation of 0..{len(self.imgs) - 1}: {self.imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.imgs)

    def __call__(self, i: int) -> int:
        return self.imgs[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Diagrammatic product: self first, then other."""
        if other.degree != self.degree:
            raise SizeMismatchError(f"degree {self.degree} vs {other.degree}")
        return Permutation(tuple(other.imgs[v] for v in self.imgs))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, v in enumerate(self.imgs):
            out[v] = i
        return Permutation(tuple(out))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.imgs))

    def permute(self, items):
        """Scatter ``items`` so that entry i lands in position sigma(i)."""
        if len(items) != self.degree:
            raise SizeMismatchError(f"{len(items)} items under degree-{self.degree} permutation")
        out = [None] * self.degree
        for i, item in enumerate(items):
            out[self.imgs[i]] = item
        return type(items)(out)

    def __str__(self):
        return "p[" + ",".join(str(v) for v in self.imgs) + "]"


def sorting_permutation(keys) -> Permutation:
    """The permutation sending position i to the rank of keys[i].

    Stable: equal keys keep their original relative order.  Applying the
    result with ``permute`` yields the sorted sequence.
    """
    order = sorted(range(len(keys)), key=lambda i: (keys[i],))
    imgs = [0] * len(keys)
    for rank, i in enumerate(order):
        imgs[i] = rank
    return Permutation(tuple(imgs))


def block_starts(sizes) -> list[int]:
    """Cumulative offsets of consecutive blocks of the given sizes."""
    starts, acc = [], 0
    for s in sizes:
        starts.append(acc)
        acc += s
    starts.append(acc)
    return starts


def locate_block(starts: list[int], pos: int) -> tuple[int, int]:
    """Return (block index, offset inside block) for a flat position."""
    import bisect

    j = bisect.bisect_right(starts, pos) - 1
    return j, pos - starts[j]


_PERM_RE = re.compile(r"^p\[([0-9,\s]*)\]$")


def parse_permutation(text: str) -> Permutation:
    m = _PERM_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad permutation literal: {text!r}")
    body = m.group(1).strip()
    imgs = tuple(int(tok) for tok in body.split(",")) if body else ()
    return Permutation(imgs)
