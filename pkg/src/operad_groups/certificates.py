"""Executable group-theoretic certificates: torsion, free subgroups,
infinite order, and freeness of the permutation action.

Each check returns a Report whose rows can be replayed independently; the
constructions are deterministic, with coordinate orientation frozen by the
stated order properties.
"""

from __future__ import annotations

import itertools
import random

from .backend import (
    BackendConfig,
    Box,
    SYMMETRIC,
    forests_up_to,
    op_comb,
    op_compose,
    op_generator,
)
from .category import Arrow, arrow_eq, compose, perm_arrow
from .errors import NotSplitError, SizeMismatchError, UnknownError
from .markings import SemiPartitionClass, ball_at, class_subset, is_ball, sp_class_eq
from .perms import Permutation
from .poset import is_split
from .report import Report
from .spans import Span, format_span, sp_is_identity, sp_mul, sp_order
from .action import act


def _require_symmetric(config: BackendConfig, what: str):
    if config.flavor != SYMMETRIC:
        raise ValueError(f"{what} needs the symmetric flavor")


def _cycle(degree: int, a: int, b: int, c: int) -> Permutation:
    imgs = list(range(degree))
    imgs[a], imgs[b], imgs[c] = b, c, a
    return Permutation(tuple(imgs))


def _transposition(degree: int, a: int, b: int) -> Permutation:
    imgs = list(range(degree))
    imgs[a], imgs[b] = b, a
    return Permutation(tuple(imgs))


def make_gamma1(config: BackendConfig) -> Span:
    """Order-2 element: one split, first two inputs swapped."""
    if not is_split(config, 1):
        raise NotSplitError("torsion certificates need a split base")
    _require_symmetric(config, "the order-2 certificate")
    gen = op_generator(config)
    den = Arrow.from_forest(config, (gen,))
    num = Arrow(config, _transposition(gen.arity, 0, 1), (gen,))
    return Span(den, num)


def make_gamma2(config: BackendConfig) -> Span:
    """Order-3 element: a three-input tree, first three inputs cycled.

    Both cycle orientations are tried; the first one meeting the order-3
    requirement is the frozen convention.
    """
    if not is_split(config, 1):
        raise NotSplitError("torsion certificates need a split base")
    _require_symmetric(config, "the order-3 certificate")
    tree = op_generator(config)
    while tree.arity < 3:
        tree = op_compose(tree, 0, op_generator(config))
    den = Arrow.from_forest(config, (tree,))
    for cyc in (_cycle(tree.arity, 0, 1, 2).inverse(), _cycle(tree.arity, 0, 1, 2)):
        g = Span(den, Arrow(config, cyc, (tree,)))
        if sp_order(g, 4) == 3:
            return g
    raise UnknownError("no three-cycle orientation has order 3")


def pingpong_balls(config: BackendConfig):
    """The two generator-cell balls the free subgroup plays between."""
    whole = Box.whole(config.dim)
    b1 = ball_at(config, 1, 0, whole.child(0, 1, config.base))
    b2 = ball_at(config, 1, 0, whole.child(0, 0, config.base))
    return b1, b2


def pingpong_check(config: BackendConfig, depth: int) -> Report:
    """Table tennis inclusions for the free subgroup on the two balls."""
    from .markings import all_balls

    g1 = make_gamma1(config)
    g2 = make_gamma2(config)
    g2sq = sp_mul(g2, g2)
    B1, B2 = pingpong_balls(config)
    pool = tuple(all_balls(config, 1, depth))
    A1 = [b for b in pool if class_subset(b, B1)]
    A2 = [b for b in pool if class_subset(b, B2)]

    def member(S: SemiPartitionClass, target: SemiPartitionClass) -> bool:
        return is_ball(S) and class_subset(S, target)

    rows = []
    for b in A2:
        r = act(g1, b)
        rows.append(
            {
                "instance": f"g1 · {b.rep}",
                "ok": member(r, B1),
                "witness": str(r.rep),
            }
        )
    for name, g in (("g2", g2), ("g2^2", g2sq)):
        for b in A1:
            r = act(g, b)
            rows.append(
                {
                    "instance": f"{name} · {b.rep}",
                    "ok": member(r, B2),
                    "witness": str(r.rep),
                }
            )
    return Report("pingpong", tuple(rows))


def _alternating_rows(g1: Span, g2: Span, max_len: int, rows: list):
    """DFS over reduced alternating words with running products."""
    g2sq = sp_mul(g2, g2)
    a_syllables = (("g1", g1),)
    b_syllables = (("g2", g2), ("g2^2", g2sq))

    def extend(word, product, last_was_a, length):
        if length >= max_len:
            return
        for name, s in b_syllables if last_was_a else a_syllables:
            new_word = f"{word}·{name}" if word else name
            new_product = sp_mul(product, s) if product is not None else s
            rows.append(
                {
                    "instance": new_word,
                    "ok": not sp_is_identity(new_product),
                    "witness": format_span(new_product),
                }
            )
            extend(new_word, new_product, not last_was_a, length + 1)

    extend("", None, False, 0)
    extend("", None, True, 0)


def alternating_words_nontrivial(config: BackendConfig, max_len: int) -> Report:
    """No reduced alternating word in the two torsion elements collapses."""
    rows: list = []
    _alternating_rows(make_gamma1(config), make_gamma2(config), max_len, rows)
    return Report("alternating_words", tuple(rows))


def make_infinite_element(config: BackendConfig) -> Span:
    """Left-association against right-association of two splits."""
    if not is_split(config, 1):
        raise NotSplitError("the infinite-order certificate needs a split base")
    den = Arrow.from_forest(config, (op_comb(config, 2, "left"),))
    num = Arrow.from_forest(config, (op_comb(config, 2, "right"),))
    return Span(den, num)


def infinite_order_check(config: BackendConfig, max_n: int) -> Report:
    g = make_infinite_element(config)
    rows = []
    power = g
    for n in range(1, max_n + 1):
        rows.append(
            {
                "instance": f"power {n}",
                "ok": not sp_is_identity(power),
                "witness": format_span(power) if n <= 3 else "",
            }
        )
        if n < max_n:
            power = sp_mul(power, g)
    return Report("infinite_order", tuple(rows))


def _sampled_perms(rng: random.Random, degree: int, count: int):
    perms = [Permutation.identity(degree)]
    for _ in range(count):
        imgs = list(range(degree))
        rng.shuffle(imgs)
        perms.append(Permutation(tuple(imgs)))
    return perms


def free_action_check(
    config: BackendConfig,
    max_perm_size: int,
    max_depth: int,
    samples: int = 2,
    seed: int = 0,
) -> Report:
    """Post-composing a non-identity permutation always changes an arrow."""
    _require_symmetric(config, "the free-action certificate")
    rng = random.Random(seed)
    rows = []
    for m in range(2, max_perm_size + 1):
        sigmas = [
            Permutation(p)
            for p in itertools.permutations(range(m))
            if p != tuple(range(m))
        ]
        for forest in forests_up_to(config, m, max_depth):
            base_arrow = Arrow.from_forest(config, forest)
            variants = _sampled_perms(rng, base_arrow.domain_len, samples)
            for sigma in sigmas:
                moved = None
                for tau in variants:
                    alpha = Arrow(config, tau, forest)
                    composite = compose(alpha, perm_arrow(config, sigma))
                    if arrow_eq(composite, alpha):
                        moved = str(alpha)
                        break
                rows.append(
                    {
                        "instance": f"{sigma} after {base_arrow}",
                        "ok": moved is None,
                        "witness": moved or "",
                    }
                )
    return Report("free_action", tuple(rows))


def sigma_span_check(alpha: Arrow, sigma: Permutation) -> bool:
    """Whether the span (alpha, alpha then sigma) is trivial.

    Two independent routes must agree: span arithmetic against the
    identity, and the movement of a single-marked ball at the first
    coordinate sigma displaces.
    """
    if sigma.degree != alpha.codomain_len:
        raise SizeMismatchError(
            f"permutation of degree {sigma.degree} on a word of length "
            f"{alpha.codomain_len}"
        )
    config = alpha.config
    g = Span(alpha, compose(alpha, perm_arrow(config, sigma)))
    algebraic = sp_is_identity(g)
    moved = [j for j in range(sigma.degree) if sigma(j) != j]
    if moved:
        j = moved[0]
        B = ball_at(config, sigma.degree, j, Box.whole(config.dim))
        geometric = sp_class_eq(act(g, B), B)
    else:
        geometric = True
    if algebraic != geometric:
        raise UnknownError("span arithmetic and ball movement disagree")
    return algebraic


def sigma_span_report(
    config: BackendConfig,
    max_perm_size: int,
    max_depth: int,
    samples: int = 2,
    seed: int = 0,
) -> Report:
    """Exhaustive run: non-trivial permutations never give trivial spans."""
    _require_symmetric(config, "the sigma-span certificate")
    rng = random.Random(seed)
    rows = []
    for m in range(2, max_perm_size + 1):
        sigmas = [
            Permutation(p)
            for p in itertools.permutations(range(m))
            if p != tuple(range(m))
        ]
        for forest in forests_up_to(config, m, max_depth):
            base_arrow = Arrow.from_forest(config, forest)
            variants = _sampled_perms(rng, base_arrow.domain_len, samples)
            for sigma in sigmas:
                bad = None
                for tau in variants:
                    alpha = Arrow(config, tau, forest)
                    if sigma_span_check(alpha, sigma):
                        bad = str(alpha)
                        break
                rows.append(
                    {
                        "instance": f"{sigma} on {base_arrow}",
                        "ok": bad is None,
                        "witness": bad or "",
                    }
                )
    return Report("sigma_span", tuple(rows))


def _padded_split(config: BackendConfig):
    """A wide split with interior input slots at positions 1 and 3."""
    u = op_comb(config, 4, "left")
    if u.arity < 5:
        raise NotSplitError("padded certificates need arity at least 5")
    return u


def make_padded_gamma1(config: BackendConfig) -> Span:
    _require_symmetric(config, "the padded order-2 certificate")
    u = _padded_split(config)
    den = Arrow.from_forest(config, (u,))
    num = Arrow(config, _transposition(u.arity, 1, 3), (u,))
    return Span(den, num)


def make_padded_gamma2(config: BackendConfig) -> Span:
    _require_symmetric(config, "the padded order-3 certificate")
    u = _padded_split(config)
    m = u.arity
    u2 = op_compose(u, 1, u)
    spots = (2, 4, m + 2)
    den = Arrow.from_forest(config, (u2,))
    for cyc in (
        _cycle(u2.arity, *spots).inverse(),
        _cycle(u2.arity, *spots),
    ):
        g = Span(den, Arrow(config, cyc, (u2,)))
        if sp_order(g, 4) == 3:
            return g
    raise UnknownError("no padded three-cycle orientation has order 3")


def make_padded_infinite(config: BackendConfig) -> Span:
    u = _padded_split(config)
    den = Arrow.from_forest(config, (op_compose(u, 1, u),))
    num = Arrow.from_forest(config, (op_compose(u, 3, u),))
    return Span(den, num)


def padded_certificates_check(config: BackendConfig, max_n: int = 16) -> Report:
    """Order and nontriviality post-conditions for wide-split variants."""
    rows = [
        {
            "instance": "padded gamma1 order",
            "ok": sp_order(make_padded_gamma1(config), 4) == 2,
            "witness": "2",
        },
        {
            "instance": "padded gamma2 order",
            "ok": sp_order(make_padded_gamma2(config), 4) == 3,
            "witness": "3",
        },
    ]
    g = make_padded_infinite(config)
    power = g
    trivial_at = None
    for n in range(1, max_n + 1):
        if sp_is_identity(power):
            trivial_at = n
            break
        if n < max_n:
            power = sp_mul(power, g)
    rows.append(
        {
            "instance": f"padded infinite element, powers to {max_n}",
            "ok": trivial_at is None,
            "witness": "" if trivial_at is None else f"power {trivial_at} trivial",
        }
    )
    _alternating_rows(make_padded_gamma1(config), make_padded_gamma2(config), 4, rows)
    return Report("padded_certificates", tuple(rows))
