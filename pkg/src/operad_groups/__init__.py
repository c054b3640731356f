"""Groups of fractions of tree and cube subdivision categories.

Arrows are permutation-plus-forest normal forms over a chosen backend
(k-ary interval subdivision or dyadic cube cutting); spans of arrows
realize group elements, act on marked-arrow classes, and support the
partition posets and group-theoretic certificates built on top.
"""

from .errors import (
    BaseMismatchError,
    CodomainMismatchError,
    DomainMismatchError,
    LengthError,
    NotFillingsError,
    NotGuillotineError,
    NotInStabilizerError,
    NotMultiballError,
    NotPartitionError,
    NotSplitError,
    OperadError,
    ParseError,
    SizeMismatchError,
    SlotRangeError,
    UnknownError,
)
from .perms import Permutation, parse_permutation
from .backend import (
    BackendConfig,
    Box,
    CutTree,
    DYADIC_CUBE,
    KARY_TREE,
    LEAF,
    Operation,
    PLANAR,
    SYMMETRIC,
    cell_operation,
    forests_up_to,
    format_operation,
    op_comb,
    op_common_refinement,
    op_compose,
    op_generator,
    op_identity,
    op_subst,
    op_validate_pattern,
    operations_up_to,
    operations_with_gens,
    parse_backend,
    parse_box,
    parse_cut_tree,
    parse_operation,
    realize,
    standard_cells,
)
from .category import (
    Arrow,
    arrow_eq,
    combine_fillings,
    compose,
    format_arrow,
    parse_arrow,
    perm_arrow,
    push_perm,
    square_fill,
    tensor,
)
from .spans import (
    Span,
    format_span,
    grid_eq,
    parse_span,
    realized_map,
    sp_eq,
    sp_identity,
    sp_inv,
    sp_is_identity,
    sp_mul,
    sp_order,
    sp_pow,
    sp_tensor,
)
from .markings import (
    MarkedArrow,
    Marking,
    SemiPartitionClass,
    all_balls,
    ball_at,
    class_subset,
    format_marking,
    full_markings,
    is_ball,
    ma_subset,
    ma_subset_with,
    marking_subset,
    object_class,
    object_equivalent,
    parse_marked_arrow,
    parse_marking,
    partial_markings,
    pull_back,
    sp_class_eq,
    submultiballs,
    trivial_partition,
)
from .action import (
    StabilizerWitness,
    act,
    decompose,
    stabilizes_pointwise,
    xi,
)
from .poset import (
    PosetTruncation,
    check_filtered,
    construct_partition_n,
    enumerate_pn,
    is_progressive,
    is_split,
    is_y_progressive,
    n_condition,
    refine_to_n,
)
from .certificates import (
    alternating_words_nontrivial,
    free_action_check,
    infinite_order_check,
    make_gamma1,
    make_gamma2,
    make_infinite_element,
    make_padded_gamma1,
    make_padded_gamma2,
    make_padded_infinite,
    padded_certificates_check,
    pingpong_balls,
    pingpong_check,
    sigma_span_check,
    sigma_span_report,
)
from .report import Report

__version__ = "0.1.0"
