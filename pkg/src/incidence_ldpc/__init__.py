"""LDPC codes from the point/line incidence graphs F(F_q, F_{q^2}) and F(Z_n, Z_{n^2})."""

from .algebra import FieldCtx, RingCtx, build_field, build_ring
from .analysis import GraphStats, check_biregular, density, girth, graph_stats, has_four_cycle
from .channel import ChannelConfig, awgn, bpsk_modulate, llr_init
from .code import (
    CodeSpec,
    LinearCode,
    ParityCheckMatrix,
    encode,
    export_alist,
    gf2_rank,
    import_alist,
    parity_check_from_graph,
    rate_report,
    syndrome,
    systematic_generator,
)
from .decoder import DecodeResult, decode_minsum, decode_spa
from .graph import (
    GraphSpec,
    IncidenceGraph,
    Line,
    Point,
    build_graph,
    canonical_restriction,
    connected_components,
    incident,
    line_through,
    point_on,
    restrict_lines,
)
from .sim import BerPoint, SweepConfig, emit_csv, run_point, run_sweep

__version__ = "0.1.0"
