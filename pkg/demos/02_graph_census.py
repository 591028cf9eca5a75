"""Size, bidegree, density and girth of small incidence graphs."""
import time

from incidence_ldpc.analysis import format_density, graph_stats
from incidence_ldpc.graph import GraphSpec, build_graph, connected_components

print(f"{'graph':<12}{'|V|':>7}{'|E|':>8}  bidegree  density   girth  components")
for family, base in [("field", 2), ("ring", 2), ("field", 3), ("ring", 3), ("field", 4), ("ring", 4)]:
    t0 = time.perf_counter()
    g = build_graph(GraphSpec(family, base))
    s = graph_stats(g)
    comps = len(connected_components(g))
    print(f"{family + ' ' + str(base):<12}{s.num_vertices:>7}{s.num_edges:>8}  {str(s.bidegree):<9} "
          f"{format_density(s.density):<9} {s.girth:<6} {comps}   ({time.perf_counter() - t0:.2f}s)")

# bigger graphs without girth
for family, base in [("field", 5), ("ring", 6), ("field", 7)]:
    s = graph_stats(build_graph(GraphSpec(family, base)), with_girth=False)
    print(f"{family + ' ' + str(base):<12}{s.num_vertices:>7}{s.num_edges:>8}  {str(s.bidegree):<9} "
          f"{format_density(s.density)}")
