"""Partition posets over a base word and their filteredness certificates.

Partitions satisfying the n-condition (at least n marked blocks equivalent
to a chosen word y) form a poset under reverse refinement.  This module
builds explicit members, refines pairs to common upper bounds, enumerates
bounded truncations, and reports filteredness pair by pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .backend import (
    BackendConfig,
    KARY_TREE,
    forests_up_to,
    op_comb,
    op_identity,
)
from .category import Arrow, compose, square_fill
from .errors import (
    BaseMismatchError,
    NotPartitionError,
    NotSplitError,
    UnknownError,
)
from .markings import (
    Marking,
    MarkedArrow,
    SemiPartitionClass,
    class_subset,
    full_markings,
    object_class,
    object_equivalent,
    sp_class_eq,
    submultiballs,
)
from .perms import block_starts, locate_block
from .report import Report


def is_split(config: BackendConfig, x: int) -> bool:
    """A word splits when it is nonempty and some operation has arity >= 2."""
    from .backend import op_generator

    return x >= 1 and op_generator(config).arity >= 2


def is_progressive(config: BackendConfig, x: int) -> bool:
    """Composites reach every arity past x; immediate for nonempty words."""
    return x >= 1


def _comb_gens_for_arity(config: BackendConfig, arity: int) -> int:
    """Generator count of the smallest comb with at least the given arity."""
    if config.kind == KARY_TREE:
        step = config.size - 1
        return -((arity - 1) // -step)
    return max(arity - 1, 0)


def _refining_forest(config: BackendConfig, coords: int, arity: int):
    """Identity forest except a comb of at least the given arity at slot 0."""
    gens = _comb_gens_for_arity(config, arity)
    comb = op_comb(config, gens)
    return (comb,) + (op_identity(config),) * (coords - 1)


def is_y_progressive(config: BackendConfig, x: int, y: int, depth: int) -> bool:
    """Every bounded-size refinement of x admits a block of y inputs feeding
    one operation (the link condition); witnessed constructively."""
    if x < 1 or y < 1:
        return False
    step = config.size - 1 if config.kind == KARY_TREE else 1
    lengths = [x + g * step for g in range(depth + 1)]
    for m in lengths:
        forest = _refining_forest(config, m, y)
        witness = Arrow.from_forest(config, forest)
        starts = block_starts([op.arity for op in forest])
        blocks = {locate_block(starts, witness.perm(t))[0] for t in range(y)}
        if len(blocks) != 1:
            raise UnknownError(
                f"no linked block of {y} inputs found refining a word of length {m}"
            )
    return True


def construct_partition_n(
    config: BackendConfig, base: int, y: int, n: int
) -> SemiPartitionClass:
    """A partition over the base with n fresh blocks of y inputs each."""
    if y < 1 or not is_split(config, y):
        raise NotSplitError(f"cannot split a word of length {y}")
    if base < 1:
        raise NotSplitError("partitions need a nonempty base")
    forest = _refining_forest(config, base, max(n * y, 2))
    arrow = Arrow.from_forest(config, forest)
    symbols = []
    for t in range(arrow.domain_len):
        symbols.append(t // y if t < n * y else n)
    # all-in-one-symbol tail keeps the marking full whatever the comb width
    return SemiPartitionClass(MarkedArrow(arrow, Marking(tuple(symbols))))


def n_condition(P: SemiPartitionClass, y: int, n: int) -> bool:
    """At least n marked blocks are object-equivalent to the word y."""
    if not P.is_partition():
        raise NotPartitionError("the n-condition applies to partitions")
    hits = sum(
        1
        for B in submultiballs(P)
        if object_equivalent(P.config, object_class(B), y)
    )
    return hits >= n


def refine_to_n(
    P: SemiPartitionClass, Q: SemiPartitionClass, y: int, n: int
) -> SemiPartitionClass:
    """A common refinement of two partitions that meets the n-condition.

    Overlay the representatives, split the first input into n blocks of y
    with fresh symbols, and keep every other input its own symbol.
    """
    if not P.is_partition() or not Q.is_partition():
        raise NotPartitionError("refinement of non-partitions")
    if P.config != Q.config or P.base_len != Q.base_len:
        raise BaseMismatchError("partitions over different bases")
    b1, _ = square_fill(P.rep.arrow, Q.rep.arrow)
    delta = compose(b1, P.rep.arrow)
    forest = _refining_forest(delta.config, delta.domain_len, max(n * y, 2))
    refined = compose(Arrow.from_forest(delta.config, forest), delta)
    symbols = []
    for t in range(refined.domain_len):
        if t < n * y:
            symbols.append(t // y)
        else:
            symbols.append(n + t - n * y)
    return SemiPartitionClass(MarkedArrow(refined, Marking(tuple(symbols))))


@dataclass(frozen=True)
class PosetTruncation:
    """The depth-bounded slice of the partition poset over one base."""

    config: BackendConfig
    base: int
    depth: int
    y: int
    n: int
    elements: tuple

    def leq(self, P: SemiPartitionClass, Q: SemiPartitionClass) -> bool:
        """P below Q means P is the coarser partition (Q refines it)."""
        return class_subset(Q, P)


def enumerate_pn(
    config: BackendConfig, base: int, depth: int, y: int, n: int
) -> PosetTruncation:
    """All n-condition partitions within a generator budget, deduplicated."""
    candidates = []
    for forest in forests_up_to(config, base, depth):
        arrow = Arrow.from_forest(config, forest)
        for marking in full_markings(config, arrow.domain_len):
            P = SemiPartitionClass(MarkedArrow(arrow, marking))
            if n_condition(P, y, n):
                candidates.append(P)
    candidates.sort(key=lambda P: str(P.rep))
    elements = []
    for P in candidates:
        if not any(sp_class_eq(P, kept) for kept in elements):
            elements.append(P)
    return PosetTruncation(config, base, depth, y, n, tuple(elements))


def check_filtered(T: PosetTruncation) -> Report:
    """Upper-bound every pair of truncation elements via refine_to_n."""
    rows = []
    for P, Q in itertools.combinations(T.elements, 2):
        R = refine_to_n(P, Q, T.y, T.n)
        ok = (
            class_subset(R, P)
            and class_subset(R, Q)
            and n_condition(R, T.y, T.n)
        )
        rows.append(
            {"p": str(P.rep), "q": str(Q.rep), "upper_bound": str(R.rep), "ok": ok}
        )
    return Report("filtered", tuple(rows))
