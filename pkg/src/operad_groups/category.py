"""Arrows of the groupoid-of-fractions substrate.

An arrow from the word X^n to the word X^m is a permutation of the n
domain coordinates followed by a forest of m operations whose arities sum
to n.  This normal form is unique once the forest operations are canonical
(lexicographic cell order), so arrow equality is plain structural equality
and the square-filling calculus below is completely deterministic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .backend import (
    BackendConfig,
    Operation,
    PLANAR,
    op_common_refinement,
    op_identity,
    op_sorted_with_rank,
    op_subst,
    parse_operation,
    realize,
    split_top_level,
)
from .errors import (
    CodomainMismatchError,
    DomainMismatchError,
    NotFillingsError,
    ParseError,
    SizeMismatchError,
)
from .perms import Permutation, block_starts, locate_block, parse_permutation

__all__ = [
    "Arrow",
    "arrow_eq",
    "combine_fillings",
    "compose",
    "format_arrow",
    "parse_arrow",
    "perm_arrow",
    "push_perm",
    "square_fill",
    "tensor",
    "realize",
    "Permutation",
]


@dataclass(frozen=True)
class Arrow:
    """Zappa-Szep normal form: apply ``perm``, then collapse by ``forest``.

    The constructor canonicalizes: any forest operation stored with cells
    out of lexicographic order is sorted, and the correcting block
    permutation is absorbed into ``perm``.  Planar arrows must come out
    with the identity permutation; anything else is a construction bug.
    """

    config: BackendConfig
    perm: Permutation
    forest: tuple[Operation, ...] = field(default=())

    def __post_init__(self):
        canon, absorb = [], []
        starts = block_starts([op.arity for op in self.forest])
        for op in self.forest:
            if op.config != self.config:
                raise DomainMismatchError("forest operation from a different backend")
            sorted_op, rank = op_sorted_with_rank(op)
            canon.append(sorted_op)
            absorb.append(rank)
        if self.perm.degree != starts[-1]:
            raise SizeMismatchError(
                f"permutation degree {self.perm.degree} vs forest arity {starts[-1]}"
            )
        if any(not r.is_identity() for r in absorb):
            block = Permutation(
                tuple(
                    starts[j] + absorb[j](t)
                    for j in range(len(self.forest))
                    for t in range(self.forest[j].arity)
                )
            )
            object.__setattr__(self, "forest", tuple(canon))
            object.__setattr__(self, "perm", self.perm * block)
        if self.config.flavor == PLANAR and not self.perm.is_identity():
            raise ValueError("planar arrows take the identity permutation")

    @classmethod
    def identity(cls, config: BackendConfig, n: int) -> "Arrow":
        return cls(config, Permutation.identity(n), (op_identity(config),) * n)

    @classmethod
    def from_forest(cls, config: BackendConfig, forest) -> "Arrow":
        forest = tuple(forest)
        n = sum(op.arity for op in forest)
        return cls(config, Permutation.identity(n), forest)

    @property
    def domain_len(self) -> int:
        return self.perm.degree

    @property
    def codomain_len(self) -> int:
        return len(self.forest)

    def is_identity(self) -> bool:
        return self.perm.is_identity() and all(op.is_identity() for op in self.forest)

    def __str__(self):
        return format_arrow(self)


def perm_arrow(config: BackendConfig, perm: Permutation) -> Arrow:
    return Arrow(config, perm, (op_identity(config),) * perm.degree)


def push_perm(forest, tau: Permutation):
    """Slide a codomain permutation backward across a forest.

    Returns (tau_hat, forest_hat): the block permutation moving each
    operation's contiguous input run to its new position, and the forest
    scattered by tau, so that (id, forest) followed by (tau, ids) equals
    (tau_hat, forest_hat).
    """
    forest = tuple(forest)
    if len(forest) != tau.degree:
        raise SizeMismatchError(
            f"forest of {len(forest)} operations under degree-{tau.degree} permutation"
        )
    forest_hat = tau.permute(forest)
    old_starts = block_starts([op.arity for op in forest])
    new_starts = block_starts([op.arity for op in forest_hat])
    imgs = []
    for j, op in enumerate(forest):
        for t in range(op.arity):
            imgs.append(new_starts[tau(j)] + t)
    return Permutation(tuple(imgs)), forest_hat


def compose(a: Arrow, b: Arrow) -> Arrow:
    """Diagrammatic composite: first ``a``, then ``b``."""
    if a.config != b.config:
        raise DomainMismatchError("composition across different backends")
    if a.codomain_len != b.domain_len:
        raise DomainMismatchError(
            f"codomain length {a.codomain_len} does not match domain length {b.domain_len}"
        )
    tau_hat, forest_hat = push_perm(a.forest, b.perm)
    starts = block_starts([op.arity for op in b.forest])
    grafted = tuple(
        op_subst(op, forest_hat[starts[u] : starts[u] + op.arity])
        for u, op in enumerate(b.forest)
    )
    return Arrow(a.config, a.perm * tau_hat, grafted)


def tensor(a: Arrow, *rest: Arrow) -> Arrow:
    """Place arrows side by side."""
    for b in rest:
        if a.config != b.config:
            raise DomainMismatchError("tensor across different backends")
        shift = a.domain_len
        imgs = a.perm.imgs + tuple(shift + v for v in b.perm.imgs)
        a = Arrow(a.config, Permutation(imgs), a.forest + b.forest)
    return a


def arrow_eq(a: Arrow, b: Arrow) -> bool:
    """Structural equality of normal forms; in these cancellative backends
    parallel arrows are homotopic exactly when equal."""
    return a.config == b.config and a.perm == b.perm and a.forest == b.forest


@functools.lru_cache(maxsize=8192)
def square_fill(a1: Arrow, a2: Arrow) -> tuple[Arrow, Arrow]:
    """Canonical filling (b1, b2) of the cospan (a1, a2): the composites
    compose(b1, a1) and compose(b2, a2) agree, both being the identity
    permutation over the coordinate-wise common refinement."""
    if a1.config != a2.config:
        raise CodomainMismatchError("cospan arrows from different backends")
    if a1.codomain_len != a2.codomain_len:
        raise CodomainMismatchError(
            f"codomain lengths {a1.codomain_len} and {a2.codomain_len} differ"
        )
    phi1_blocks, phi2_blocks = [], []
    for op1, op2 in zip(a1.forest, a2.forest):
        _, phi_p, phi_q, _, _ = op_common_refinement(op1, op2)
        phi1_blocks.append(phi_p)
        phi2_blocks.append(phi_q)

    def filling(a, phi_blocks):
        starts = block_starts([op.arity for op in a.forest])
        fills = []
        for i in range(a.domain_len):
            j, t = locate_block(starts, a.perm(i))
            fills.append(phi_blocks[j][t])
        glued = compose(Arrow.from_forest(a.config, fills), a)
        return Arrow(a.config, glued.perm.inverse(), tuple(fills))

    b1 = filling(a1, phi1_blocks)
    b2 = filling(a2, phi2_blocks)
    return b1, b2


def combine_fillings(f1, f2, cospan) -> tuple[Arrow, Arrow, Arrow, Arrow]:
    """Merge two square fillings of one cospan into a common refinement.

    With cospan (x, y), fillings (i, j) and (h, g) satisfying i*x = j*y and
    h*x = g*y, returns (alpha, beta, delta, epsilon) with
        delta*i = alpha = epsilon*h,   delta*j = beta = epsilon*g,
    so alpha and beta again fill the cospan and both given fillings factor
    through it.  Cancellativity makes the equalizing steps of the general
    construction trivial, leaving a single square filling of the two
    composite legs.
    """
    x, y = cospan
    i, j = f1
    h, g = f2
    a = compose(i, x)
    if not arrow_eq(a, compose(j, y)):
        raise NotFillingsError("first pair does not fill the cospan")
    b = compose(h, x)
    if not arrow_eq(b, compose(g, y)):
        raise NotFillingsError("second pair does not fill the cospan")
    c, d = square_fill(a, b)
    alpha = compose(c, i)
    beta = compose(c, j)
    if not (arrow_eq(alpha, compose(d, h)) and arrow_eq(beta, compose(d, g))):
        raise NotFillingsError("fillings do not merge; cancellativity violated")
    return alpha, beta, c, d


def format_arrow(a: Arrow) -> str:
    forest = " , ".join(str(op) for op in a.forest)
    if a.perm.is_identity() and a.forest:
        return forest
    return f"{a.perm} ; {forest}" if forest else f"{a.perm} ;"


def _strip_angles(text: str) -> str:
    t = text.strip()
    while t.startswith("⟨") and t.endswith("⟩"):
        t = t[1:-1].strip()
    return t


def parse_arrow(text: str, config: BackendConfig) -> Arrow:
    t = _strip_angles(text)
    perm = None
    if ";" in t:
        head, _, tail = t.partition(";")
        perm = parse_permutation(head)
        t = tail.strip()
    if not t:
        if perm is None:
            raise ParseError("empty arrow literal")
        forest: tuple[Operation, ...] = ()
    else:
        forest = tuple(
            parse_operation(chunk, config) for chunk in split_top_level(t, ",")
        )
    if perm is None:
        perm = Permutation.identity(sum(op.arity for op in forest))
    return Arrow(config, perm, forest)
