"""Queue layouts of posets: rainbows, layout strategies, extremal families and an exact solver."""

from .constructions import (
    counterexample_witness,
    height2_counterexample,
    poset_from_bipartite,
    q_height,
    q_width,
    small_patterns,
    subdivided_crown,
    weak_order,
)
from .diagram import UpwardDiagram
from .errors import (
    AugmentationFailed,
    CycleError,
    EmptyPosetError,
    InvalidDiagram,
    InvalidLevels,
    MissingBounds,
    NotALinearExtension,
    NotBipartition,
    NotTwoDimensional,
    ParseError,
    QueuePosetError,
    TooLarge,
    WidthExceeded,
)
from .exact import ExactResult, exact_queue_number, rainbow_bruteforce_oracle
from .io import export, parse_layout, parse_poset
from .layout import LayoutReport, QueueLayout, Rainbow, assign_queues, max_rainbow, verify_layout
from .poset import (
    ChainPartition,
    LinearExtension,
    Poset,
    check_extension,
    conjugate,
    from_relations,
    height,
    linear_extensions,
    width,
    with_bounds,
)
from .strategies import (
    CrownEmbedding,
    GrayGraph,
    any_extension_layout,
    color_split_extension,
    crown_free_layout,
    gray_graph,
    lazy_width2_layout,
    leftmost_layout,
    paired_chain_layout,
    planar_width_layout,
)

__all__ = [name for name in dir() if not name.startswith("_")]
