"""Group elements of the fraction groupoid as spans of arrows.

A span is an ordered pair (denominator, numerator) of arrows with common
domain and common codomain x; it represents an element of the fundamental
group at x.  No reduced form is maintained: equality goes through a common
denominator, which is complete because the backends are cancellative.

Each span also realizes a piecewise-affine self-map of the codomain's
geometric cells, sending denominator cells to numerator cells; products
compose these maps left to right (realize the left factor first).  The
grid comparison below uses that map as an independent equality oracle.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .backend import BackendConfig
from .category import Arrow, arrow_eq, compose, realize, square_fill, tensor
from .errors import BaseMismatchError, ParseError, SizeMismatchError
from .perms import Permutation


@dataclass(frozen=True)
class Span:
    den: Arrow
    num: Arrow

    def __post_init__(self):
        if self.den.config != self.num.config:
            raise BaseMismatchError("span legs from different backends")
        if self.den.domain_len != self.num.domain_len:
            raise SizeMismatchError(
                f"span legs have domains of length {self.den.domain_len} "
                f"and {self.num.domain_len}"
            )
        if self.den.codomain_len != self.num.codomain_len:
            raise BaseMismatchError("span legs end at different base words")

    @property
    def config(self) -> BackendConfig:
        return self.den.config

    @property
    def base_len(self) -> int:
        return self.den.codomain_len

    def __str__(self):
        return format_span(self)


def sp_identity(config: BackendConfig, n: int) -> Span:
    one = Arrow.identity(config, n)
    return Span(one, one)


def _require_same_base(g: Span, h: Span):
    if g.config != h.config or g.base_len != h.base_len:
        raise BaseMismatchError("spans live over different base words")


def sp_mul(g: Span, h: Span) -> Span:
    """Product via a square filling of g's numerator against h's denominator."""
    _require_same_base(g, h)
    b1, b2 = square_fill(g.num, h.den)
    return Span(compose(b1, g.den), compose(b2, h.num))


def sp_inv(g: Span) -> Span:
    return Span(g.num, g.den)


def sp_eq(g: Span, h: Span) -> bool:
    """Equality through a common denominator; cancellativity collapses
    homotopy of the transported numerators to structural equality."""
    _require_same_base(g, h)
    b1, b2 = square_fill(g.den, h.den)
    return arrow_eq(compose(b1, g.num), compose(b2, h.num))


def sp_is_identity(g: Span) -> bool:
    return sp_eq(g, sp_identity(g.config, g.base_len))


def sp_pow(g: Span, n: int) -> Span:
    if n < 0:
        return sp_pow(sp_inv(g), -n)
    acc = sp_identity(g.config, g.base_len)
    for _ in range(n):
        acc = sp_mul(acc, g)
    return acc


def sp_order(g: Span, max_n: int) -> int | None:
    """Least exponent up to the bound killing g, if any."""
    acc = sp_identity(g.config, g.base_len)
    for n in range(1, max_n + 1):
        acc = sp_mul(acc, g)
        if sp_is_identity(acc):
            return n
    return None


def sp_tensor(g: Span, h: Span) -> Span:
    return Span(tensor(g.den, h.den), tensor(g.num, h.num))


def realized_map(g: Span):
    """Affine piece table: ((j, den cell), (j', num cell)) per domain coordinate."""
    return tuple(zip(realize(g.den), realize(g.num)))


class _PieceIndex:
    """Locates the affine piece containing a point of the codomain."""

    def __init__(self, g: Span):
        self.base = g.config.base
        self.dim = g.config.dim
        self.buckets = {}
        for (jd, d_cell), (jn, n_cell) in realized_map(g):
            self.buckets.setdefault(jd, []).append((d_cell, jn, n_cell))
        if self.dim == 1:
            for pieces in self.buckets.values():
                pieces.sort(key=lambda row: row[0].lower(self.base))

    def image(self, j: int, point):
        pieces = self.buckets.get(j, ())
        if self.dim == 1:
            lowers = [row[0].lower(self.base)[0] for row in pieces]
            row = pieces[bisect_right(lowers, point[0]) - 1]
            return self._affine(row, j, point)
        for row in pieces:
            d_cell = row[0]
            lo, hi = d_cell.lower(self.base), d_cell.upper(self.base)
            if all(a <= p < b for a, p, b in zip(lo, point, hi)):
                return self._affine(row, j, point)
        raise ValueError(f"point {point} not covered at coordinate {j}")

    def _affine(self, row, j, point):
        d_cell, jn, n_cell = row
        img = tuple(
            nlo + (p - dlo) * Fraction(self.base) ** (de - ne)
            for p, dlo, nlo, de, ne in zip(
                point,
                d_cell.lower(self.base),
                n_cell.lower(self.base),
                d_cell.exps,
                n_cell.exps,
            )
        )
        return jn, img


def grid_eq(g: Span, h: Span) -> bool:
    """Compare the realized maps on every grid point with denominator
    base^K, K one more than the largest exponent in either span."""
    _require_same_base(g, h)
    base, dim = g.config.base, g.config.dim
    exps = [0]
    for span in (g, h):
        for arrow in (span.den, span.num):
            for op in arrow.forest:
                for cell in op.cells:
                    exps.extend(cell.exps)
    K = max(exps) + 1
    index_g, index_h = _PieceIndex(g), _PieceIndex(h)
    step = Fraction(1, base**K)
    for j in range(g.base_len):
        for coords in itertools.product(range(base**K), repeat=dim):
            point = tuple(c * step for c in coords)
            if index_g.image(j, point) != index_h.image(j, point):
                return False
    return True


def format_span(g: Span) -> str:
    return f"{g.den} | {g.num}"


def parse_span(text: str, config: BackendConfig) -> Span:
    from .backend import split_top_level
    from .category import parse_arrow

    parts = split_top_level(text, "|")
    if len(parts) != 2:
        raise ParseError(f"a span literal is 'den | num', got {text!r}")
    return Span(parse_arrow(parts[0], config), parse_arrow(parts[1], config))
