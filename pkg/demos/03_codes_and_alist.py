"""From a graph to a code: parity-check matrix, rank, rate, alist."""
import numpy as np

from incidence_ldpc.code import (
    LinearCode,
    encode,
    export_alist,
    import_alist,
    parity_check_from_graph,
    rate_report,
    syndrome,
)
from incidence_ldpc.graph import GraphSpec, build_graph, canonical_restriction, context_for

g = build_graph(GraphSpec("field", 3))
H = parity_check_from_graph(g)
print("H:", H)
print(rate_report(g).render())

code = LinearCode.from_parity_check(H)
msg = np.random.default_rng(1).integers(0, 2, code.k)
word = encode(code, msg)
print(f"[{code.n},{code.k}] codeword syndrome weight:", int(syndrome(H, word).sum()))

text = export_alist(H)
print("alist header:", text.splitlines()[:2])
assert import_alist(text) == H

# line restriction: keep lines whose x lies in the first 16 values of Z_25
R = canonical_restriction(context_for("ring", 5), 16)
sub = build_graph(GraphSpec("ring", 5, R))
print("restricted ring 5, r=16")
print(rate_report(sub).render())
