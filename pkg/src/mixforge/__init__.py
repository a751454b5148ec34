"""Balanced words, their multiple context-free grammars, and the loop geometry behind them."""

from .errors import (
    AmbiguousCyclicOrder,
    AmbiguousTurn,
    AntiparallelTangents,
    ArityMismatch,
    DimensionMismatch,
    Incompleteness,
    InvalidCharacter,
    MixforgeError,
    NotACycle,
    NotClosed,
    NotEmbedded,
    NotInOn,
    OddLength,
    OutOfDomain,
    ResourceBound,
    UnsupportedDimension,
    ZeroVector,
)
from .words import Letter, Word, displacement, enumerate_On, in_On, parse_word
from .geometry import (
    LatticePath,
    is_embedded,
    link_cycle_degree,
    rotation_number,
    self_intersections,
    simplify_loop,
    to_path,
    winding_number,
)
from .grammar import (
    Arrangement,
    DerivationTree,
    Grammar,
    check_step,
    enumerate_derivable,
    grammar_O2,
    grammar_O3,
    verify_tree,
)
from .splitter import (
    SplitWitness,
    derive,
    derive3,
    find_alternating_split3,
    find_split,
    find_split3,
)
from .chain_complex import build_complex, homology_ranks, link_graph, zero_scan
from .svg import render_svg

__version__ = "0.1.0"
