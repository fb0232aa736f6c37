"""Streaming two-coloring of uniform hypergraphs."""

from .certified import certified_stream_color, residual_expected_size_bound, residual_sizes
from .core import (BLUE, RED, Hypergraph, brute_force_two_colorable, is_monochromatic,
                   max_edge_intersections, shadow_size, validate_coloring)
from .local_lemma import check_local_precondition, local_stream_color
from .outcome import ColorOutcome, Failure, FailureReason
from .recolor import first_flippable, offline_color, p_default, stream_color
from .sparse_vertex import (balanced_stream_color, k_balanced_stream_color, m_bounds, mk_bounds,
                            mono_prob_bound, mono_prob_exact)
from .stream_io import (EdgeStreamHeader, gen_erdos, gen_uniform_random, parse_stream,
                        write_stream)
from .tape import FixedTape, RandomTape

__version__ = "0.1.0"
