"""Local complementation, parity classes of bicoloured graphs, and transition systems."""
from .canon import automorphism_group, canonical_form, key_hex
from .complement import (
    apply_word, complement_in_orbit, complement_reachable, complementation_diameter,
    enumerate_complementation_class, is_reduced, local_complement, locally_equivalent, reduce_word,
)
from .errors import *  # noqa: F401,F403
from .families import gen, strongly_regular_mod
from .graph import Graph, format_graph, parse_graph, parse_graphs
from .parity import (
    ParityMove, complement_with_set, enumerate_parity_class, find_black_anticlique, invert,
    is_invertible, is_pure, natural_colouring, parity_complement, purity,
)
from .split import (
    RootedGraph, Split, critical_vertices, essential_decompositions, find_splits, induced_rooted_graphs,
    leaf_graphs, purity_by_decomposition, root_graphs, tight_vertices,
)

__version__ = "0.1.0"
