"""Concrete subdivision operads: k-ary trees and dyadic cube cutting.

An operation of arity n subdivides the unit cube [0,1)^d (the unit
interval for trees) into n half-open cells.  Trees are the 1-dimensional
base-k case with cells listed left to right; cube operations carry their
cell sequence as explicit data, and every constructor in this module emits
the lexicographic (canonical) order.  The geometric realization defined at
the bottom doubles as an independent oracle for the categorical layers
built on top.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BaseMismatchError,
    NotGuillotineError,
    NotPartitionError,
    ParseError,
    SizeMismatchError,
    SlotRangeError,
)
from .perms import Permutation, block_starts, locate_block

PLANAR = "planar"
SYMMETRIC = "symmetric"

KARY_TREE = "kary_tree"
DYADIC_CUBE = "dyadic_cube"


@dataclass(frozen=True)
class BackendConfig:
    """Choice of operad: kary_tree(k) or dyadic_cube(d), planar or symmetric."""

    kind: str
    size: int
    flavor: str = SYMMETRIC

    def __post_init__(self):
        if self.kind not in (KARY_TREE, DYADIC_CUBE):
            raise ParseError(f"unknown backend kind: {self.kind!r}")
        if self.flavor not in (PLANAR, SYMMETRIC):
            raise ParseError(f"unknown flavor: {self.flavor!r}")
        if self.kind == KARY_TREE and self.size < 2:
            raise ParseError("kary_tree needs k >= 2")
        if self.kind == DYADIC_CUBE and self.size < 1:
            raise ParseError("dyadic_cube needs d >= 1")
        if self.kind == DYADIC_CUBE and self.size >= 2 and self.flavor != SYMMETRIC:
            raise ParseError("dyadic_cube with d >= 2 requires the symmetric flavor")

    @classmethod
    def tree(cls, k: int, flavor: str = SYMMETRIC) -> "BackendConfig":
        return cls(KARY_TREE, k, flavor)

    @classmethod
    def cube(cls, d: int, flavor: str = SYMMETRIC) -> "BackendConfig":
        return cls(DYADIC_CUBE, d, flavor)

    @property
    def dim(self) -> int:
        return 1 if self.kind == KARY_TREE else self.size

    @property
    def base(self) -> int:
        """Subdivision base per axis: k for trees, 2 for cubes."""
        return self.size if self.kind == KARY_TREE else 2

    def gens_of_arity(self, arity: int) -> int:
        """Generator count of an operation of the given arity."""
        if self.kind == KARY_TREE:
            return (arity - 1) // (self.size - 1)
        return arity - 1

    def __str__(self):
        return f"tree:k={self.size}" if self.kind == KARY_TREE else f"cube:d={self.size}"


_BACKEND_RE = re.compile(r"^(tree:k=|cube:d=)(\d+)$")


def parse_backend(text: str, flavor: str = SYMMETRIC) -> BackendConfig:
    m = _BACKEND_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad backend name: {text!r} (expected tree:k=N or cube:d=N)")
    kind = KARY_TREE if m.group(1).startswith("tree") else DYADIC_CUBE
    return BackendConfig(kind, int(m.group(2)), flavor)


@dataclass(frozen=True)
class Box:
    """Standard cell: per axis i the interval [offs[i]/b^exps[i], (offs[i]+1)/b^exps[i])."""

    exps: tuple[int, ...]
    offs: tuple[int, ...]

    def __post_init__(self):
        if len(self.exps) != len(self.offs):
            raise ParseError("box needs one exponent and one offset per axis")

    @classmethod
    def whole(cls, dim: int) -> "Box":
        return cls((0,) * dim, (0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.exps)

    def in_range(self, base: int) -> bool:
        return all(e >= 0 and 0 <= a < base**e for e, a in zip(self.exps, self.offs))

    def lower(self, base: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, base**e) for e, a in zip(self.exps, self.offs))

    def upper(self, base: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(a + 1, base**e) for e, a in zip(self.exps, self.offs))

    def volume(self, base: int) -> Fraction:
        vol = Fraction(1)
        for e in self.exps:
            vol /= base**e
        return vol

    def sort_key(self, base: int):
        return (self.lower(base), self.exps)

    def child(self, axis: int, digit: int, base: int) -> "Box":
        """The digit-th of the base many slices of this box along the axis."""
        exps = list(self.exps)
        offs = list(self.offs)
        exps[axis] += 1
        offs[axis] = offs[axis] * base + digit
        return Box(tuple(exps), tuple(offs))

    def contains(self, other: "Box", base: int) -> bool:
        for e1, a1, e2, a2 in zip(self.exps, self.offs, other.exps, other.offs):
            if e2 < e1 or a2 // base ** (e2 - e1) != a1:
                return False
        return True

    def meet(self, other: "Box", base: int) -> "Box | None":
        """Intersection; standard cells are laminar per axis, so this is a cell or empty."""
        exps, offs = [], []
        for e1, a1, e2, a2 in zip(self.exps, self.offs, other.exps, other.offs):
            if e1 <= e2:
                if a2 // base ** (e2 - e1) != a1:
                    return None
                exps.append(e2)
                offs.append(a2)
            else:
                if a1 // base ** (e1 - e2) != a2:
                    return None
                exps.append(e1)
                offs.append(a1)
        return Box(tuple(exps), tuple(offs))

    def inside(self, outer: "Box", base: int) -> "Box":
        """Transport a cell of the unit cube into ``outer``."""
        exps = tuple(eo + es for eo, es in zip(outer.exps, self.exps))
        offs = tuple(
            ao * base**es + a for ao, es, a in zip(outer.offs, self.exps, self.offs)
        )
        return Box(exps, offs)

    def rescale_from(self, outer: "Box", base: int) -> "Box":
        """View a subcell of ``outer`` in outer's own unit coordinates."""
        exps = tuple(es - eo for es, eo in zip(self.exps, outer.exps))
        offs = tuple(
            a - ao * base**e for a, ao, e in zip(self.offs, outer.offs, exps)
        )
        return Box(exps, offs)

    def __str__(self):
        return "b(" + ",".join(f"{e}:{a}" for e, a in zip(self.exps, self.offs)) + ")"


_BOX_RE = re.compile(r"^b\(([0-9:,\s]*)\)$")


def parse_box(text: str) -> Box:
    m = _BOX_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad box literal: {text!r}")
    exps, offs = [], []
    for pair in m.group(1).split(","):
        pieces = pair.split(":")
        if len(pieces) != 2:
            raise ParseError(f"bad box axis entry: {pair!r}")
        exps.append(int(pieces[0]))
        offs.append(int(pieces[1]))
    return Box(tuple(exps), tuple(offs))


def _sorted_cells(cells, base: int):
    return tuple(sorted(cells, key=lambda c: c.sort_key(base)))


@dataclass(frozen=True)
class Operation:
    """One operad operation: an ordered cell partition of the unit cube.

    Trees demand left-to-right cell order (the planar tree is recoverable);
    cube patterns keep their sequence as given, so two orderings of the
    same cells are distinct operations related by an input permutation.
    """

    config: BackendConfig
    cells: tuple[Box, ...]

    def __post_init__(self):
        _validate_cells(self.config, self.cells)

    @property
    def arity(self) -> int:
        return len(self.cells)

    @property
    def gens(self) -> int:
        return self.config.gens_of_arity(self.arity)

    def is_identity(self) -> bool:
        return self.arity == 1

    def __str__(self):
        return format_operation(self)


@functools.lru_cache(maxsize=None)
def _validate_cells(cfg: BackendConfig, cells) -> None:
    # memoized: the same operation is rebuilt constantly by composition
    base, dim = cfg.base, cfg.dim
    if not cells:
        raise NotPartitionError("an operation needs at least one cell")
    for c in cells:
        if c.dim != dim:
            raise NotPartitionError(f"cell {c} has dimension {c.dim}, expected {dim}")
        if not c.in_range(base):
            raise NotPartitionError(f"cell {c} lies outside the unit cube")
    if sum(c.volume(base) for c in cells) != 1:
        raise NotPartitionError("cells do not have total volume 1")
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if cells[i].meet(cells[j], base) is not None:
                raise NotPartitionError(f"cells {cells[i]} and {cells[j]} overlap")
    if cfg.kind == KARY_TREE:
        if cells != _sorted_cells(cells, base):
            raise NotPartitionError("tree cells must be listed left to right")
        _check_kary(cells, Box.whole(1), base)
    else:
        _check_guillotine(cells, Box.whole(dim), dim)


def _check_kary(cells, box, k):
    """Cells must arise from ``box`` by recursive k-fold splitting."""
    if len(cells) == 1:
        if cells[0] != box:
            raise NotPartitionError(f"stray cell {cells[0]} does not match its branch")
        return
    groups = [[] for _ in range(k)]
    for c in cells:
        if c.exps[0] <= box.exps[0]:
            raise NotPartitionError(f"cell {c} does not refine the k-fold split")
        digit = c.offs[0] // k ** (c.exps[0] - box.exps[0] - 1) % k
        groups[digit].append(c)
    for digit, group in enumerate(groups):
        if not group:
            raise NotPartitionError("a branch of the k-fold split is uncovered")
        _check_kary(tuple(group), box.child(0, digit, k), k)


def _check_guillotine(cells, box, dim):
    """Cells must be separable by recursive midpoint hyperplane cuts."""
    if len(cells) <= 1:
        return
    for axis in range(dim):
        halves = ([], [])
        for c in cells:
            if c.exps[axis] <= box.exps[axis]:
                break  # crosses the midplane of this axis
            digit = c.offs[axis] >> (c.exps[axis] - box.exps[axis] - 1) & 1
            halves[digit].append(c)
        else:
            for digit in (0, 1):
                _check_guillotine(tuple(halves[digit]), box.child(axis, digit, 2), dim)
            return
    raise NotGuillotineError("no axis midplane is free of crossing cells")


def op_validate_pattern(config: BackendConfig, boxes) -> Operation:
    """Constructor from a raw box sequence; rejects non-partitions and
    patterns that no sequence of straight cuts can produce."""
    return Operation(config, tuple(boxes))


def op_identity(config: BackendConfig) -> Operation:
    return Operation(config, (Box.whole(config.dim),))


def op_generator(config: BackendConfig, axis: int = 0) -> Operation:
    """The basic split: k slices for trees, a halving of one axis for cubes."""
    if not 0 <= axis < config.dim:
        raise SlotRangeError(f"axis {axis} out of range for {config}")
    whole = Box.whole(config.dim)
    cells = tuple(whole.child(axis, t, config.base) for t in range(config.base))
    return Operation(config, cells)


def op_subst(outer: Operation, inners) -> Operation:
    """Substitute one operation into every input slot of ``outer``.

    Cell order is the grafting order: outer's slots in sequence, each
    expanded to the transported cells of its inner operation.
    """
    inners = tuple(inners)
    if len(inners) != outer.arity:
        raise SizeMismatchError(
            f"{len(inners)} operations substituted into arity {outer.arity}"
        )
    base = outer.config.base
    cells = []
    for slot_cell, inner in zip(outer.cells, inners):
        if inner.config != outer.config:
            raise BaseMismatchError("substitution across different backends")
        cells.extend(c.inside(slot_cell, base) for c in inner.cells)
    return Operation(outer.config, tuple(cells))


def op_compose(outer: Operation, slot: int, inner: Operation) -> Operation:
    """Substitute ``inner`` into a single input slot of ``outer``."""
    if not 0 <= slot < outer.arity:
        raise SlotRangeError(f"slot {slot} out of range for arity {outer.arity}")
    inners = [op_identity(outer.config)] * outer.arity
    inners[slot] = inner
    return op_subst(outer, inners)


def op_comb(config: BackendConfig, gens: int, side: str = "left") -> Operation:
    """Iterated basic splits, always refining the first (or last) slot."""
    op = op_identity(config)
    for _ in range(gens):
        slot = 0 if side == "left" else op.arity - 1
        op = op_compose(op, slot, op_generator(config))
    return op


@functools.lru_cache(maxsize=None)
def op_sorted_with_rank(op: Operation) -> tuple[Operation, Permutation]:
    """Lexicographically sorted copy plus the rank permutation sending each
    stored cell position to its sorted position."""
    base = op.config.base
    keys = [c.sort_key(base) for c in op.cells]
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    imgs = [0] * len(keys)
    for rank, i in enumerate(order):
        imgs[i] = rank
    return Operation(op.config, _sorted_cells(op.cells, base)), Permutation(tuple(imgs))


@functools.lru_cache(maxsize=None)
def op_common_refinement(p: Operation, q: Operation):
    """Overlay of two partitions with the relative data on both sides.

    Returns (r, phi_p, phi_q, pi_p, pi_q): substituting phi_p into p's slots
    lists r's cells in grafting order, and pi_p is the permutation from that
    order to r's canonical (lexicographic) order; likewise for q.
    """
    if p.config != q.config:
        raise BaseMismatchError("refinement across different backends")
    base = p.config.base
    met = (c1.meet(c2, base) for c1 in p.cells for c2 in q.cells)
    r_cells = _sorted_cells((m for m in met if m is not None), base)
    r = Operation(p.config, r_cells)
    position = {cell: i for i, cell in enumerate(r_cells)}

    def relative(op):
        phi, imgs = [], []
        for c in op.cells:
            sub = [cell for cell in r_cells if c.contains(cell, base)]
            phi.append(Operation(op.config, tuple(s.rescale_from(c, base) for s in sub)))
            imgs.extend(position[s] for s in sub)
        return tuple(phi), Permutation(tuple(imgs))

    phi_p, pi_p = relative(p)
    phi_q, pi_q = relative(q)
    return r, phi_p, phi_q, pi_p, pi_q


def cell_operation(config: BackendConfig, box: Box) -> Operation:
    """The smallest operation having ``box`` among its cells."""
    base, dim = config.base, config.dim
    if box.dim != dim or not box.in_range(base):
        raise NotPartitionError(f"cell {box} does not fit {config}")

    def descend(cur):
        if cur == box:
            return [cur]
        for axis in range(dim):
            if box.exps[axis] > cur.exps[axis]:
                digit = box.offs[axis] // base ** (box.exps[axis] - cur.exps[axis] - 1) % base
                cells = []
                for t in range(base):
                    child = cur.child(axis, t, base)
                    cells.extend(descend(child) if t == digit else [child])
                return cells
        raise NotPartitionError(f"cell {box} escapes {cur}")

    cells = descend(Box.whole(dim))
    return Operation(config, _sorted_cells(cells, base))


def realize(arrow):
    """Geometric footprint of an arrow: for each domain coordinate, the pair
    (codomain coordinate, cell within it) that the coordinate occupies.

    Duck-typed on (perm, forest) so it can serve as an oracle for any layer.
    """
    starts = block_starts([op.arity for op in arrow.forest])
    table = []
    for i in range(arrow.perm.degree):
        j, t = locate_block(starts, arrow.perm(i))
        table.append((j, arrow.forest[j].cells[t]))
    return tuple(table)


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


@functools.lru_cache(maxsize=None)
def _tree_cell_shapes(k: int, gens: int) -> tuple:
    if gens == 0:
        return ((Box.whole(1),),)
    shapes = []
    for split in _compositions(gens - 1, k):
        for parts in itertools.product(*(_tree_cell_shapes(k, g) for g in split)):
            cells = []
            for digit, part in enumerate(parts):
                outer = Box((1,), (digit,))
                cells.extend(c.inside(outer, k) for c in part)
            shapes.append(tuple(cells))
    return tuple(shapes)


@functools.lru_cache(maxsize=None)
def _cube_cell_shapes(d: int, gens: int) -> tuple:
    if gens == 0:
        return ((Box.whole(d),),)
    seen = set()
    for axis in range(d):
        for g_low in range(gens):
            g_high = gens - 1 - g_low
            for low in _cube_cell_shapes(d, g_low):
                for high in _cube_cell_shapes(d, g_high):
                    whole = Box.whole(d)
                    cells = [c.inside(whole.child(axis, 0, 2), 2) for c in low]
                    cells += [c.inside(whole.child(axis, 1, 2), 2) for c in high]
                    seen.add(_sorted_cells(cells, 2))
    return tuple(sorted(seen, key=lambda cs: [c.sort_key(2) for c in cs]))


def operations_with_gens(config: BackendConfig, gens: int) -> tuple[Operation, ...]:
    """All canonical operations with exactly the given generator count."""
    if config.kind == KARY_TREE:
        shapes = _tree_cell_shapes(config.size, gens)
    else:
        shapes = _cube_cell_shapes(config.size, gens)
    return tuple(Operation(config, cells) for cells in shapes)


def operations_up_to(config: BackendConfig, max_gens: int) -> tuple[Operation, ...]:
    out = []
    for g in range(max_gens + 1):
        out.extend(operations_with_gens(config, g))
    return tuple(out)


def forests_up_to(config: BackendConfig, coords: int, max_gens: int):
    """All forests (one operation per coordinate) within a generator budget."""
    if coords == 0:
        yield ()
        return
    for total in range(max_gens + 1):
        for split in _compositions(total, coords):
            pools = [operations_with_gens(config, g) for g in split]
            yield from itertools.product(*pools)


def standard_cells(config: BackendConfig, max_depth: int) -> tuple[Box, ...]:
    """All cells whose total exponent (cut count to isolate) is at most the bound."""
    base, dim = config.base, config.dim
    cells = []
    for exps in _compositions_up_to(max_depth, dim):
        ranges = [range(base**e) for e in exps]
        for offs in itertools.product(*ranges):
            cells.append(Box(exps, offs))
    return _sorted_cells(cells, base)


def _compositions_up_to(bound: int, parts: int):
    for total in range(bound + 1):
        yield from _compositions(total, parts)


@dataclass(frozen=True)
class CutTree:
    """Witness for a cube operation: recursive midpoint halvings.

    A leaf has axis None; a node halves the current box along its axis and
    recurses into the low and high halves.
    """

    axis: int | None = None
    low: "CutTree | None" = None
    high: "CutTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.axis is None

    def boxes(self, box: Box):
        if self.is_leaf:
            yield box
            return
        yield from self.low.boxes(box.child(self.axis, 0, 2))
        yield from self.high.boxes(box.child(self.axis, 1, 2))

    def to_operation(self, config: BackendConfig) -> Operation:
        """The canonical (lexicographically ordered) operation this tree cuts."""
        if config.kind != DYADIC_CUBE:
            raise ParseError("cut trees describe cube operations")
        for node in self._nodes():
            if not 0 <= node.axis < config.dim:
                raise ParseError(f"cut axis {node.axis} out of range for {config}")
        cells = tuple(self.boxes(Box.whole(config.dim)))
        return Operation(config, _sorted_cells(cells, 2))

    def _nodes(self):
        if not self.is_leaf:
            yield self
            yield from self.low._nodes()
            yield from self.high._nodes()

    def __str__(self):
        if self.is_leaf:
            return "."
        return f"[{self.axis} {self.low} {self.high}]"


LEAF = CutTree()


def parse_cut_tree(text: str) -> CutTree:
    tokens = re.findall(r"\[|\]|\.|\d+", text)
    if "".join(tokens).replace(" ", "") != re.sub(r"\s+", "", text):
        raise ParseError(f"bad cut tree literal: {text!r}")
    pos = 0

    def next_token():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"truncated cut tree literal: {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def rec():
        tok = next_token()
        if tok == ".":
            return LEAF
        if tok == "[":
            axis_tok = next_token()
            if not axis_tok.isdigit():
                raise ParseError(f"expected cut axis, got {axis_tok!r}")
            low = rec()
            high = rec()
            if next_token() != "]":
                raise ParseError(f"unbalanced brackets in {text!r}")
            return CutTree(int(axis_tok), low, high)
        raise ParseError(f"unexpected token {tok!r} in cut tree literal")

    tree = rec()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens in cut tree literal: {text!r}")
    return tree


def _parse_tree_literal(text: str, config: BackendConfig) -> Operation:
    if re.sub(r"[().\s]", "", text):
        raise ParseError(f"bad tree literal: {text!r}")
    tokens = re.findall(r"[().]", text)
    k = config.size
    pos = 0

    def next_token():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"truncated tree literal: {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def rec(box):
        tok = next_token()
        if tok == ".":
            return [box]
        if tok == "(":
            cells = []
            for digit in range(k):
                cells.extend(rec(box.child(0, digit, k)))
            if next_token() != ")":
                raise ParseError(f"expected {k} children per node in {text!r}")
            return cells
        raise ParseError(f"unexpected token {tok!r} in tree literal")

    cells = rec(Box.whole(1))
    if pos != len(tokens):
        raise ParseError(f"trailing tokens in tree literal: {text!r}")
    return Operation(config, tuple(cells))


def _format_tree(op: Operation) -> str:
    k = op.config.size

    def rec(cells, box):
        if len(cells) == 1 and cells[0] == box:
            return "."
        groups = [[] for _ in range(k)]
        for c in cells:
            digit = c.offs[0] // k ** (c.exps[0] - box.exps[0] - 1) % k
            groups[digit].append(c)
        inner = " ".join(rec(g, box.child(0, d, k)) for d, g in enumerate(groups))
        return f"({inner})"

    return rec(list(op.cells), Box.whole(1))


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on a separator character, ignoring occurrences nested in
    parentheses, brackets, or braces."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        elif ch == sep and depth == 0:
            pieces.append(text[start:i])
            start = i + 1
    pieces.append(text[start:])
    return pieces


def _parse_pattern(text: str, config: BackendConfig) -> Operation:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"bad pattern literal: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        raise ParseError("a pattern needs at least one box")
    boxes = [parse_box(chunk) for chunk in split_top_level(inner, ",")]
    return Operation(config, tuple(boxes))


def parse_operation(text: str, config: BackendConfig) -> Operation:
    t = text.strip()
    if config.kind == KARY_TREE:
        return _parse_tree_literal(t, config)
    if t == ".":
        return op_identity(config)
    if t.startswith("["):
        return parse_cut_tree(t).to_operation(config)
    if t.startswith("{"):
        return _parse_pattern(t, config)
    raise ParseError(f"bad operation literal: {text!r}")


def format_operation(op: Operation) -> str:
    if op.config.kind == KARY_TREE:
        return _format_tree(op)
    if op.is_identity():
        return "."
    return "{" + ",".join(str(c) for c in op.cells) + "}"
