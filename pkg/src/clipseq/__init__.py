"""Clip sequences: polygon triangulations, 312-avoiding permutations,
binary trees, and polygon dissections, with exhaustive verification."""

from .clip import ClipStep, ClipTrace, build_triangulation, clip_sequence, triangle_of_label
from .dissect import (
    CellReport,
    RemovedTriangle,
    RunCell,
    decent_to_dissection,
    dissection_to_decent,
    inverse_table,
)
from .enumeration import (
    all_312_avoiders,
    all_decent_312_avoiders,
    all_dissections,
    all_triangulations,
    catalan,
    count_dissections,
    random_312_avoider,
)
from .errors import (
    BadDiagonalCount,
    BadValueSets,
    BoundExceeded,
    ClipseqError,
    CrossingDiagonals,
    InnerTriangle,
    InputError,
    InvariantViolation,
    LabelOutOfRange,
    LimitExceeded,
    MalformedTree,
    NoPreimage,
    NotAPermutation,
    NotAvoiding,
    NotDecent,
    ParseError,
    PolygonTooSmall,
    SideAsDiagonal,
    TooManyDiagonals,
    VertexOutOfRange,
    WrongDiagonalCount,
)
from .patterns import (
    Permutation,
    RunDecomposition,
    as_permutation,
    compose_312,
    contains_312_naive,
    decompose_312,
    descending_runs,
    find_312,
    has_run_signature,
    is_312_avoiding,
    is_decent,
    is_uniform_run_avoider,
    up_down_pattern,
)
from .polygon import (
    Cell,
    Diagonal,
    Dissection,
    Triangle,
    Triangulation,
    cells_of,
    crossing,
    diag,
    is_side,
    triangles_of,
    validate_dissection,
    validate_triangulation,
)
from .textio import (
    RenderOptions,
    cache_read,
    cache_write,
    format_permutation,
    format_permutation_compact,
    format_polygon,
    parse_permutation,
    parse_polygon,
    polygon_json,
    render,
)
from .tree import TreeNode, from_binary_tree, post_order, to_binary_tree
from .verify import (
    VerificationReport,
    verify_clip_bijection,
    verify_dissection_bijection,
    verify_postorder,
)

__version__ = "0.1.0"
