"""A short BER sweep, compared with uncoded BPSK."""
from incidence_ldpc.channel import uncoded_ber
from incidence_ldpc.code import LinearCode, parity_check_from_graph
from incidence_ldpc.graph import GraphSpec, build_graph
from incidence_ldpc.sim import SweepConfig, emit_csv, parse_grid, run_sweep

code = LinearCode.from_parity_check(parity_check_from_graph(build_graph(GraphSpec("field", 3))))
cfg = SweepConfig(ebn0_grid=parse_grid("0:1:5"), max_frames=5000, min_bit_errors=100, seed=1)
points = run_sweep(code, cfg)
print(emit_csv(points))
for p in points:
    print(f"{p.ebn0_db:4.1f} dB  coded {p.ber:.2e} +- {p.ber_stderr():.1e}   "
          f"uncoded {uncoded_ber(p.ebn0_db):.2e}")
