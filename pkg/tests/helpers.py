"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they are used to check:
the marked-arrow preorder is re-derived from realized geometry on a uniform
grid, and ball recognition is re-derived by exhaustive search over standard
boxes.
"""

import itertools

import operad_groups as og

TREE2 = og.BackendConfig.tree(2)
TREE3 = og.BackendConfig.tree(3)
CUBE1 = og.BackendConfig.cube(1)
CUBE2 = og.BackendConfig.cube(2)
CUBE3 = og.BackendConfig.cube(3)
PLANAR2 = og.BackendConfig.tree(2, flavor=og.PLANAR)

# Five boxes tiling the unit 3-cube in a pinwheel around a central axis:
# every midplane slices through some box, so no sequence of halving cuts
# separates them even though they form a genuine partition.
PINWHEEL = (
    og.Box((1, 0, 1), (0, 0, 0)),
    og.Box((1, 1, 0), (1, 0, 0)),
    og.Box((0, 1, 1), (0, 1, 1)),
    og.Box((1, 1, 1), (1, 1, 0)),
    og.Box((1, 1, 1), (0, 0, 1)),
)


def random_operation(config, rng, gens):
    """A random operation built by grafting `gens` generators one at a time."""
    op = og.op_identity(config)
    for _ in range(gens):
        axis = rng.randrange(config.dim)
        op = og.op_compose(op, rng.randrange(op.arity), og.op_generator(config, axis))
    return op


def random_forest(config, rng, coords, gens):
    split = [0] * coords
    for _ in range(gens):
        split[rng.randrange(coords)] += 1
    return tuple(random_operation(config, rng, g) for g in split)


def random_arrow(config, rng, coords=1, gens=3):
    forest = random_forest(config, rng, coords, gens)
    imgs = list(range(sum(op.arity for op in forest)))
    if config.flavor == og.SYMMETRIC:
        rng.shuffle(imgs)
    return og.Arrow(config, og.Permutation(tuple(imgs)), forest)


def random_span(config, rng, coords=1, max_gens=4):
    """A random group element; equal generator counts keep the legs composable."""
    gens = rng.randrange(max_gens + 1)
    return og.Span(
        random_arrow(config, rng, coords, gens),
        random_arrow(config, rng, coords, gens),
    )


def all_arrows(config, coords, max_gens):
    """Every arrow out of the length-`coords` object with at most `max_gens`
    generators in its forest (all input permutations in the symmetric flavor)."""
    for forest in og.forests_up_to(config, coords, max_gens):
        n = sum(op.arity for op in forest)
        if config.flavor == og.SYMMETRIC:
            perms = itertools.permutations(range(n))
        else:
            perms = (tuple(range(n)),)
        for imgs in perms:
            yield og.Arrow(config, og.Permutation(imgs), forest)


def all_marked(config, coords, max_gens):
    for arrow in all_arrows(config, coords, max_gens):
        for marking in og.partial_markings(config, arrow.domain_len):
            yield og.MarkedArrow(arrow, marking)


def arrow_depth(arrow):
    """The finest per-axis subdivision exponent appearing in the footprint."""
    return max(max(cell.exps) for _, cell in og.realize(arrow))


def _atoms(cell, base, resolution):
    """Grid atoms of side base**-resolution covering the cell, as index tuples."""
    axes = [
        range(off * base ** (resolution - exp), (off + 1) * base ** (resolution - exp))
        for exp, off in zip(cell.exps, cell.offs)
    ]
    return itertools.product(*axes)


def atom_symbols(marked, resolution):
    """Map (codomain coordinate, grid atom) to the symbol marking that region."""
    base = marked.arrow.config.base
    table = {}
    for (coord, cell), symbol in zip(og.realize(marked.arrow), marked.marking.symbols):
        for atom in _atoms(cell, base, resolution):
            table[(coord, atom)] = symbol
    return table


def oracle_ma_subset(p, q):
    """Geometric re-derivation of the marked-arrow preorder: each marked
    region of `p` must sit inside a single marked region of `q`."""
    resolution = max(arrow_depth(p.arrow), arrow_depth(q.arrow))
    table_p = atom_symbols(p, resolution)
    table_q = atom_symbols(q, resolution)
    for symbol in set(p.marking.symbols) - {None}:
        targets = {table_q[a] for a, s in table_p.items() if s == symbol}
        if len(targets) != 1 or None in targets:
            return False
    return True


def all_boxes(config, max_exp):
    """Every standard box whose per-axis exponents are at most `max_exp`."""
    per_axis = [
        (e, o) for e in range(max_exp + 1) for o in range(config.base**e)
    ]
    for combo in itertools.product(per_axis, repeat=config.dim):
        yield og.Box(tuple(e for e, _ in combo), tuple(o for _, o in combo))


def oracle_is_ball(B):
    """Search re-derivation of ball recognition: B is a ball iff it equals
    ball_at(...) for some standard box in the marked coordinate."""
    rep = B.rep
    pieces = [
        (coord, cell)
        for (coord, cell), s in zip(og.realize(rep.arrow), rep.marking.symbols)
        if s is not None
    ]
    if len({coord for coord, _ in pieces}) != 1:
        return False
    coord = pieces[0][0]
    config = rep.arrow.config
    max_exp = max(max(cell.exps) for _, cell in pieces)
    return any(
        og.sp_class_eq(B, og.ball_at(config, rep.arrow.codomain_len, coord, box))
        for box in all_boxes(config, max_exp)
    )


def is_transitive(bitrows):
    """Transitivity of a relation given as per-row reachability bitmasks."""
    for i, row in enumerate(bitrows):
        rest, j = row, 0
        while rest:
            if rest & 1 and (bitrows[j] | row) != row:
                return False
            rest >>= 1
            j += 1
    return True
