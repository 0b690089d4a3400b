"""Workbench for diagram categories and invariant word subgroups."""

from .partition import (
    EMPTY,
    BlockWord,
    Partition,
    PartitionError,
    all_partitions,
    block_word,
    compose,
    connect_blocks,
    cyclic_shift,
    equivalent,
    involution,
    is_noncrossing,
    is_single_leg,
    make_named,
    parse,
    render,
    rotate,
    rotation_orbit,
    simplify,
    simplify_word,
    tensor,
    to_one_row,
    word_of,
)
from .words import (
    E,
    FREE_E,
    FreeWord,
    SubgroupApprox,
    WordError,
    Z2Word,
    abelianize,
    apply_s,
    apply_s0,
    conjugate,
    exponent,
    from_free,
    free_inv,
    free_mult,
    free_pow,
    identify,
    inv,
    is_even,
    mult,
    parse_free,
    parse_z2,
    reduce_free,
    reduce_z2,
    subgroup_closure,
    to_free,
)
from .closure import (
    CategoryApprox,
    closure,
    connectability_check,
    contains,
    is_hyperoctahedral_at_bound,
    is_simplifiable_at_bound,
    single_leg_members,
)

__version__ = "0.1.0"
