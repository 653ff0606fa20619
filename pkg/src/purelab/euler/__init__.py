"""Eulerian multigraphs, transition systems and their correspondence with parity classes."""
from .correspondence import (
    Correspondence, CutReport, RootedTS, canonical_pairing, correspondence, double, halve,
    rooted_ts_completions, rooted_ts_identifications, split_edge_cut_check, ts_to_bicoloured,
)
from .dow import (
    DOW, alternance_graph, cycles_from_anticlique, equivalent, format_dow, parse_dow, realize, switch, twist,
)
from .multigraph import (
    Multigraph, TransitionSystem, euler_tour, forced_transitions, format_mgraph, is_admissible,
    is_euler_tour, orthogonal_euler_tour, parse_mgraph, parse_mgraphs, tour_transitions, transition_key,
)
from .ocd import (
    CdcResult, cdc_search, is_cycle_double_cover, ocd_by_parity, ocd_by_search,
    orthogonal_cycle_decomposition, verify_decomposition,
)
from .transition_graph import TransitionGraph, alternating_euler_tour, transition_graph
