"""Belief propagation on the [7,4] Hamming code and a graph code."""
import numpy as np

from incidence_ldpc.channel import ChannelConfig, awgn, bpsk_modulate, llr_init
from incidence_ldpc.code import HAMMING_7_4, LinearCode, encode, parity_check_from_graph
from incidence_ldpc.decoder import decode_minsum, decode_spa
from incidence_ldpc.graph import GraphSpec, build_graph

ham = LinearCode.from_parity_check(HAMMING_7_4)
w = encode(ham, [1, 0, 1, 1])
llr = 2.0 * bpsk_modulate(w)
llr[4] = -llr[4]
res = decode_spa(ham.H, llr)
print("sent    ", w)
print("decoded ", res.bits, res.status, "after", res.iterations, "iterations")

code = LinearCode.from_parity_check(parity_check_from_graph(build_graph(GraphSpec("field", 3))))
cfg = ChannelConfig(3.0, rate=code.rate, seed=5)
words = encode(code, np.random.default_rng(0).integers(0, 2, (200, code.k)))
rx = np.stack([awgn(bpsk_modulate(x), cfg, frame_index=i) for i, x in enumerate(words)])
llr = llr_init(rx, cfg)
print(f"\n200 frames of the [{code.n},{code.k}] code at 3 dB")
print("channel bit errors:", np.count_nonzero((rx < 0) != words))
for name, dec in [("spa", decode_spa), ("min-sum", decode_minsum)]:
    r = dec(code.H, llr)
    print(f"{name:8} bit errors {np.count_nonzero(r.bits != words):5d}  "
          f"converged {int(r.converged.sum())}/200  mean iters {r.iterations.mean():.2f}")
