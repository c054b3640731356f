"""Markings on color words and the calculus of marked arrows.

A marking assigns an optional symbol to each coordinate of a word; symbols
are relabeled 0, 1, 2, ... by first occurrence on construction, so marking
equivalence is literal equality.  Pulling a codomain marking back through
an arrow gives every input of an operation its output's symbol.  Classes
of marked arrows over a fixed base (semi-partitions) carry the refinement
preorder computed through square fillings.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .backend import (
    BackendConfig,
    Box,
    DYADIC_CUBE,
    KARY_TREE,
    PLANAR,
    cell_operation,
    op_identity,
    realize,
    standard_cells,
)
from .category import Arrow, compose, perm_arrow, square_fill
from .errors import (
    BaseMismatchError,
    LengthError,
    NotFillingsError,
    NotMultiballError,
    ParseError,
)
from .perms import Permutation, block_starts, locate_block


def _relabel(values) -> tuple:
    table = {}
    out = []
    for v in values:
        if v is None:
            out.append(None)
        else:
            if v not in table:
                table[v] = len(table)
            out.append(table[v])
    return tuple(out)


@dataclass(frozen=True)
class Marking:
    """Partial symbol assignment; stored symbols are 0..k-1 by first occurrence."""

    symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "symbols", _relabel(self.symbols))

    def __len__(self):
        return len(self.symbols)

    @property
    def symbol_count(self) -> int:
        return len({s for s in self.symbols if s is not None})

    def support(self, symbol) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols) if s == symbol)

    def is_full(self) -> bool:
        return all(s is not None for s in self.symbols)

    def is_ordered(self) -> bool:
        """Each symbol occupies one contiguous run of coordinates."""
        for symbol in range(self.symbol_count):
            coords = self.support(symbol)
            if coords[-1] - coords[0] + 1 != len(coords):
                return False
        return True

    def keep_only(self, symbol) -> "Marking":
        return Marking(tuple(s if s == symbol else None for s in self.symbols))

    def __str__(self):
        return format_marking(self)


def _symbol_name(s: int) -> str:
    name = ""
    s += 1
    while s:
        s, r = divmod(s - 1, 26)
        name = chr(ord("a") + r) + name
    return name


def format_marking(m: Marking) -> str:
    body = " ".join(
        f"{i}:{'-' if s is None else _symbol_name(s)}" for i, s in enumerate(m.symbols)
    )
    return f"m[{body}]"


_MARKING_RE = re.compile(r"^m\[(.*)\]$")


def parse_marking(text: str) -> Marking:
    match = _MARKING_RE.match(text.strip())
    if not match:
        raise ParseError(f"bad marking literal: {text!r}")
    body = match.group(1).strip()
    entries = {}
    if body:
        for chunk in body.split():
            idx, _, sym = chunk.partition(":")
            if not idx.isdigit() or not sym:
                raise ParseError(f"bad marking entry: {chunk!r}")
            if int(idx) in entries:
                raise ParseError(f"duplicate coordinate {idx} in marking")
            entries[int(idx)] = None if sym == "-" else sym
    if sorted(entries) != list(range(len(entries))):
        raise ParseError("marking must cover coordinates 0..n-1")
    return Marking(tuple(entries[i] for i in range(len(entries))))


def pull_back(arrow: Arrow, comarking: Marking) -> Marking:
    """Transport a codomain marking to the domain: every input of an
    operation inherits its output's symbol, routed through the permutation."""
    if len(comarking) != arrow.codomain_len:
        raise LengthError(
            f"comarking of length {len(comarking)} on codomain of length "
            f"{arrow.codomain_len}"
        )
    starts = block_starts([op.arity for op in arrow.forest])
    out = []
    for i in range(arrow.domain_len):
        j, _ = locate_block(starts, arrow.perm(i))
        out.append(comarking.symbols[j])
    return Marking(tuple(out))


def marking_subset(m1: Marking, m2: Marking) -> bool:
    """True iff a symbol map sends m1 into m2: each m1-symbol's coordinates
    all carry one common m2-symbol."""
    if len(m1) != len(m2):
        raise LengthError(f"markings of lengths {len(m1)} and {len(m2)}")
    for symbol in range(m1.symbol_count):
        images = {m2.symbols[i] for i in m1.support(symbol)}
        if len(images) != 1 or None in images:
            return False
    return True


@dataclass(frozen=True)
class MarkedArrow:
    arrow: Arrow
    marking: Marking

    def __post_init__(self):
        if len(self.marking) != self.arrow.domain_len:
            raise LengthError(
                f"marking of length {len(self.marking)} on domain of length "
                f"{self.arrow.domain_len}"
            )
        if self.arrow.config.flavor == PLANAR and not self.marking.is_ordered():
            raise ValueError("planar markings must be ordered (contiguous symbols)")

    @property
    def config(self) -> BackendConfig:
        return self.arrow.config

    @property
    def base_len(self) -> int:
        return self.arrow.codomain_len

    def __str__(self):
        return f"{self.arrow} @ {self.marking}"


def parse_marked_arrow(text: str, config: BackendConfig) -> MarkedArrow:
    from .backend import split_top_level
    from .category import parse_arrow

    parts = split_top_level(text, "@")
    if len(parts) != 2:
        raise ParseError(f"a marked arrow literal is 'arrow @ marking', got {text!r}")
    return MarkedArrow(parse_arrow(parts[0], config), parse_marking(parts[1].strip()))


def _require_same_base_ma(p: MarkedArrow, q: MarkedArrow):
    if p.config != q.config or p.base_len != q.base_len:
        raise BaseMismatchError("marked arrows over different base words")


def ma_subset_with(p: MarkedArrow, q: MarkedArrow, filling) -> bool:
    """Refinement verdict through an explicit square filling (b1, b2)."""
    b1, b2 = filling
    from .category import arrow_eq

    if not arrow_eq(compose(b1, p.arrow), compose(b2, q.arrow)):
        raise NotFillingsError("the given pair does not fill the cospan")
    return marking_subset(pull_back(b1, p.marking), pull_back(b2, q.marking))


def ma_subset(p: MarkedArrow, q: MarkedArrow) -> bool:
    """The preorder on marked arrows; any square filling gives this verdict."""
    _require_same_base_ma(p, q)
    b1, b2 = square_fill(p.arrow, q.arrow)
    return marking_subset(pull_back(b1, p.marking), pull_back(b2, q.marking))


@dataclass(frozen=True)
class SemiPartitionClass:
    """Equivalence class of marked arrows over a base word.

    Stores one representative, normalized to identity permutation by
    absorbing the permutation into the marking (always possible, and a
    no-op in the planar flavor).
    """

    rep: MarkedArrow

    def __post_init__(self):
        ma = self.rep
        if not ma.arrow.perm.is_identity():
            sigma_inv = ma.arrow.perm.inverse()
            arrow = Arrow(ma.config, Permutation.identity(ma.arrow.domain_len), ma.arrow.forest)
            marking = Marking(tuple(ma.marking.symbols[sigma_inv(i)] for i in range(len(ma.marking))))
            object.__setattr__(self, "rep", MarkedArrow(arrow, marking))

    @property
    def config(self) -> BackendConfig:
        return self.rep.config

    @property
    def base_len(self) -> int:
        return self.rep.base_len

    def is_partition(self) -> bool:
        return self.rep.marking.is_full()

    def is_multiball(self) -> bool:
        return self.rep.marking.symbol_count == 1

    def __str__(self):
        return str(self.rep)


def sp_class_eq(P: SemiPartitionClass, Q: SemiPartitionClass) -> bool:
    return ma_subset(P.rep, Q.rep) and ma_subset(Q.rep, P.rep)


def class_subset(Q: SemiPartitionClass, P: SemiPartitionClass) -> bool:
    """Refinement of classes: Q is finer than (contained in) P."""
    return ma_subset(Q.rep, P.rep)


def submultiballs(P: SemiPartitionClass) -> tuple[SemiPartitionClass, ...]:
    """One multiball per symbol, obtained by erasing all the others."""
    return tuple(
        SemiPartitionClass(MarkedArrow(P.rep.arrow, P.rep.marking.keep_only(s)))
        for s in range(P.rep.marking.symbol_count)
    )


def marked_cells(B: SemiPartitionClass, symbol: int = 0) -> tuple:
    """Realized (coordinate, cell) pairs of the symbol's marked coordinates."""
    table = realize(B.rep.arrow)
    return tuple(table[i] for i in B.rep.marking.support(symbol))


def is_ball(B: SemiPartitionClass) -> bool:
    """A multiball is a ball when its marked cells unite to one standard cell.

    Geometric reading of "has a single-marked representative": the bounding
    box of the marked cells must be a standard cell that the cells fill
    exactly.
    """
    if not B.is_multiball():
        raise NotMultiballError("ball test on a class that is not a multiball")
    base = B.config.base
    cells = marked_cells(B)
    if len({j for j, _ in cells}) != 1:
        return False
    boxes = [cell for _, cell in cells]
    lo = [min(b.lower(base)[axis] for b in boxes) for axis in range(B.config.dim)]
    hi = [max(b.upper(base)[axis] for b in boxes) for axis in range(B.config.dim)]
    exps, offs = [], []
    for a, b in zip(lo, hi):
        width = b - a
        if width > 1 or Fraction(1, width.denominator) != width:
            return False
        e = 0
        while Fraction(1, base**e) != width:
            e += 1
            if Fraction(1, base**e) < width:
                return False
        off = a / width
        if off.denominator != 1:
            return False
        exps.append(e)
        offs.append(int(off))
    hull = Box(tuple(exps), tuple(offs))
    return sum(b.volume(base) for b in boxes) == hull.volume(base)


def ball_hull(B: SemiPartitionClass) -> tuple[int, Box]:
    """The (coordinate, cell) a ball fills; only meaningful when is_ball."""
    base = B.config.base
    cells = marked_cells(B)
    j = cells[0][0]
    boxes = [cell for _, cell in cells]
    exps, offs = [], []
    for axis in range(B.config.dim):
        a = min(b.lower(base)[axis] for b in boxes)
        width = max(b.upper(base)[axis] for b in boxes) - a
        e = 0
        while Fraction(1, base**e) > width:
            e += 1
        exps.append(e)
        offs.append(int(a * base**e))
    return j, Box(tuple(exps), tuple(offs))


def object_class(B: SemiPartitionClass) -> int:
    """Length of the marked subword of the stored representative; well
    defined on the class only up to object equivalence."""
    if not B.is_multiball():
        raise NotMultiballError("object class of a non-multiball")
    return len(B.rep.marking.support(0))


def object_equivalent(config: BackendConfig, a: int, b: int) -> bool:
    """Whether words of these lengths are connected by a span."""
    if a == 0 or b == 0:
        return a == b
    if config.kind == KARY_TREE:
        return (a - b) % (config.size - 1) == 0
    return True


def trivial_partition(config: BackendConfig, n: int) -> SemiPartitionClass:
    """The coarsest class: identity arrow, everything one symbol."""
    return SemiPartitionClass(
        MarkedArrow(Arrow.identity(config, n), Marking((0,) * n))
    )


def ball_at(config: BackendConfig, base_len: int, coord: int, cell: Box) -> SemiPartitionClass:
    """The ball sitting at a standard cell of one codomain coordinate."""
    forest = [op_identity(config)] * base_len
    forest[coord] = cell_operation(config, cell)
    arrow = Arrow.from_forest(config, forest)
    start = sum(op.arity for op in forest[:coord])
    position = start + forest[coord].cells.index(cell)
    symbols = [None] * arrow.domain_len
    symbols[position] = 0
    return SemiPartitionClass(MarkedArrow(arrow, Marking(tuple(symbols))))


def all_balls(config: BackendConfig, base_len: int, depth: int):
    """Every ball of cell depth at most the bound, in deterministic order."""
    for coord in range(base_len):
        for cell in standard_cells(config, depth):
            yield ball_at(config, base_len, coord, cell)


def set_partitions(n: int):
    """All set partitions of range(n) as canonical symbol tuples."""
    if n == 0:
        yield ()
        return
    for rest in set_partitions(n - 1):
        used = 0 if not rest else max(rest) + 1
        for s in range(used + 1):
            yield rest + (s,)


def ordered_full_markings(n: int):
    """Full markings whose symbols are contiguous runs (planar flavor)."""
    if n == 0:
        yield ()
        return
    for first_run in range(1, n + 1):
        for rest in ordered_full_markings(n - first_run):
            yield (0,) * first_run + tuple(s + 1 for s in rest)


def full_markings(config: BackendConfig, n: int):
    if config.flavor == PLANAR:
        return (Marking(m) for m in ordered_full_markings(n))
    return (Marking(m) for m in set_partitions(n))


def _planar_partial(n: int):
    if n == 0:
        yield ()
        return
    for rest in _planar_partial(n - 1):
        yield rest + (None,)
    for run in range(1, n + 1):
        for head in _planar_partial(n - run):
            used = len({s for s in head if s is not None})
            yield head + (used,) * run


def partial_markings(config: BackendConfig, n: int):
    """Every marking on a length-n word, canonical symbols, flavor-aware."""
    if config.flavor == PLANAR:
        seen = set()
        for m in _planar_partial(n):
            if m not in seen:
                seen.add(m)
                yield Marking(m)
        return
    for support_size in range(n + 1):
        for support in itertools.combinations(range(n), support_size):
            for labels in set_partitions(support_size):
                symbols = [None] * n
                for pos, s in zip(support, labels):
                    symbols[pos] = s
                yield Marking(tuple(symbols))
