"""Structural checks on incidence graphs: girth, density, bi-regularity, 4-cycles."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import sparse

__all__ = [
    "GraphStats",
    "BiregularReport",
    "girth",
    "girth_upper_bound",
    "density",
    "format_density",
    "check_biregular",
    "has_four_cycle",
    "graph_stats",
]


def _shortest_cycle_from(adj, root, dist, parent, best):
    """Length of the shortest cycle detected by BFS from ``root`` (or ``best``)."""
    touched = [root]
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        du = dist[u]
        # any cycle closed from here has length >= 2*du + 1
        if 2 * du + 1 >= best:
            break
        pu = parent[u]
        for w in adj[u]:
            dw = dist[w]
            if dw < 0:
                dist[w] = du + 1
                parent[w] = u
                touched.append(w)
                queue.append(w)
            elif w != pu:
                length = du + dw + 1
                if length < best:
                    best = length
    for v in touched:
        dist[v] = -1
        parent[v] = -1
    return best


def _girth_over_roots(adj, roots):
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    best = math.inf
    for r in roots:
        best = _shortest_cycle_from(adj, r, dist, parent, best)
        if best == 3:
            break
    return best


def girth(g):
    """Exact girth by breadth-first search from every vertex.

    Returns ``math.inf`` for an acyclic graph.
    """
    adj = g.adjacency_lists()
    return _girth_over_roots(adj, range(len(adj)))


def girth_upper_bound(g, roots):
    """Shortest cycle through any of ``roots``.

    Only an upper bound on the girth: cycles avoiding every root are missed.
    """
    adj = g.adjacency_lists()
    return _girth_over_roots(adj, [int(r) for r in roots])


def density(g):
    """2|E| / (|V| (|V| - 1)) as an exact fraction."""
    v = g.num_vertices
    if v < 2:
        raise ValueError("density needs at least two vertices")
    return Fraction(2 * g.num_edges, v * (v - 1))


def format_density(d, digits=3):
    """Decimal rendering with ``digits`` significant figures."""
    return f"{float(d):.{digits}g}"


@dataclass
class BiregularReport:
    """Outcome of :func:`check_biregular`.

    ``bidegree`` is ``(line degree, point degree)`` when both sides are
    constant; otherwise the offending vertices (those whose degree differs
    from the most common degree on their side) are listed as local indices.
    """

    bidegree: Optional[tuple]
    offending_points: list
    offending_lines: list

    @property
    def ok(self):
        return self.bidegree is not None


def _offenders(degrees):
    if len(degrees) == 0:
        return None, []
    values, counts = np.unique(degrees, return_counts=True)
    mode = values[np.argmax(counts)]
    return int(mode), np.flatnonzero(degrees != mode).tolist()


def check_biregular(g):
    s, bad_lines = _offenders(g.line_degrees())
    r, bad_points = _offenders(g.point_degrees())
    if bad_lines or bad_points or s is None or r is None:
        return BiregularReport(None, bad_points, bad_lines)
    return BiregularReport((s, r), [], [])


def has_four_cycle(H):
    """True iff two rows of ``H`` share at least two columns.

    ``H`` may be a :class:`~incidence_ldpc.code.ParityCheckMatrix`, a scipy
    sparse matrix or a dense 0/1 array.
    """
    m = H.csr if hasattr(H, "csr") else sparse.csr_matrix(H)
    m = sparse.csr_matrix(m, dtype=np.int32)
    m.data[:] = 1
    overlap = (m @ m.T).tocoo()
    off = overlap.row != overlap.col
    return bool(np.any(overlap.data[off] >= 2))


@dataclass
class GraphStats:
    num_points: int
    num_lines: int
    num_edges: int
    bidegree: object
    density: Fraction
    girth: object

    @property
    def num_vertices(self):
        return self.num_points + self.num_lines

    def as_dict(self):
        d = asdict(self)
        d["num_vertices"] = self.num_vertices
        d["density"] = str(self.density)
        d["density_approx"] = float(self.density)
        d["bidegree"] = list(self.bidegree) if isinstance(self.bidegree, tuple) else self.bidegree
        if self.girth == math.inf:
            d["girth"] = "acyclic"
        return d

    def render(self):
        bideg = self.bidegree if isinstance(self.bidegree, str) else "(%d, %d)" % self.bidegree
        g = self.girth
        if g == math.inf:
            g = "acyclic"
        elif g is None:
            g = "not computed"
        return "\n".join([
            f"points    {self.num_points}",
            f"lines     {self.num_lines}",
            f"vertices  {self.num_vertices}",
            f"edges     {self.num_edges}",
            f"bidegree  {bideg}",
            f"density   {self.density} ~ {format_density(self.density)}",
            f"girth     {g}",
        ]) + "\n"


def graph_stats(g, with_girth=True):
    report = check_biregular(g)
    return GraphStats(
        num_points=g.num_points,
        num_lines=g.num_lines,
        num_edges=g.num_edges,
        bidegree=report.bidegree if report.ok else "irregular",
        density=density(g),
        girth=girth(g) if with_girth else None,
    )
