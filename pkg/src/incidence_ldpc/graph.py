"""Point/line incidence graphs F(F_q, F_{q^2}) and F(Z_n, Z_{n^2}).

A point is a triple ``(a, b, c)`` with ``a, c`` small and ``b`` big; a line is
``[x, y, z]`` with ``x, y`` big and ``z`` small.  They are incident when

    y - b = a*x
    z - c = a*y + a*y^q        (field; y^n with reductions mod n / n^2 for rings)

Vertices are identified by mixed-radix indices:

    idx(a, b, c) = (i(a) * B + b) * s + i(c)
    idx[x, y, z] = (x * B + y) * s + i(z)

where ``B`` is the size of the big domain, ``s`` the size of the small domain and
``i(.)`` the position of a small element in canonical (ascending) order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .algebra import FieldCtx, RingCtx, build_field, build_ring

__all__ = [
    "Point",
    "Line",
    "GraphSpec",
    "IncidenceGraph",
    "context_for",
    "incident",
    "line_through",
    "point_on",
    "point_index",
    "line_index",
    "point_from_index",
    "line_from_index",
    "build_graph",
    "restrict_lines",
    "canonical_restriction",
    "connected_components",
    "select_component",
    "DEFAULT_MAX_EDGES",
]

DEFAULT_MAX_EDGES = 20_000_000


class Point(NamedTuple):
    a: int
    b: int
    c: int


class Line(NamedTuple):
    x: int
    y: int
    z: int


def context_for(family, base):
    if family == "field":
        return build_field(base)
    if family == "ring":
        return build_ring(base)
    raise ValueError(f"family must be 'field' or 'ring', got {family!r}")


# ---------------------------------------------------------------------------
# vectorised coordinate maps
# ---------------------------------------------------------------------------

class _Coords:
    """Array-level incidence solver shared by both families."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.big = ctx.order
        self.s = ctx.small_order
        if isinstance(ctx, FieldCtx):
            self.small_values = np.asarray(ctx.subfield)
        else:
            self.small_values = np.arange(ctx.n, dtype=np.int64)
            nn = ctx.n * ctx.n
            self._pow_n = np.array([pow(y, ctx.n, nn) for y in range(nn)], dtype=np.int64)
        self.small_index = np.full(self.big, -1, dtype=np.int64)
        self.small_index[self.small_values] = np.arange(self.s)

    # -- primitive operations on arrays of encoded values ------------------
    def _ax_plus(self, a, x, b):
        """b + a*x in the big domain."""
        ctx = self.ctx
        if isinstance(ctx, FieldCtx):
            return ctx.add_table[b, ctx.mul_table[a, x]]
        return (b + a * x) % self.big

    def _ax_minus(self, y, a, x):
        """y - a*x in the big domain."""
        ctx = self.ctx
        if isinstance(ctx, FieldCtx):
            return ctx.add_table[y, ctx.neg_table[ctx.mul_table[a, x]]]
        return (y - a * x) % self.big

    def trace(self, a, y):
        """a*y + a*y^q (field) or (a*y + a*y^n) mod n (ring)."""
        ctx = self.ctx
        if isinstance(ctx, FieldCtx):
            return ctx.add_table[ctx.mul_table[a, y], ctx.mul_table[a, ctx.frob_table[y]]]
        return (a * y + a * self._pow_n[y]) % self.s

    def _small_add(self, u, v):
        ctx = self.ctx
        if isinstance(ctx, FieldCtx):
            return ctx.add_table[u, v]
        return (u + v) % self.s

    def _small_sub(self, u, v):
        ctx = self.ctx
        if isinstance(ctx, FieldCtx):
            return ctx.add_table[u, ctx.neg_table[v]]
        return (u - v) % self.s

    # -- solvers -----------------------------------------------------------
    def line_through(self, a, b, c, x):
        y = self._ax_plus(a, x, b)
        z = self._small_add(c, self.trace(a, y))
        return y, z

    def point_on(self, x, y, z, a):
        b = self._ax_minus(y, a, x)
        c = self._small_sub(z, self.trace(a, y))
        return b, c

    # -- indexing ----------------------------------------------------------
    def point_ids(self, a, b, c):
        return (self.small_index[a] * self.big + b) * self.s + self.small_index[c]

    def line_ids(self, x, y, z):
        return (x * self.big + y) * self.s + self.small_index[z]

    def split_point_ids(self, idx):
        idx = np.asarray(idx)
        ic = idx % self.s
        b = (idx // self.s) % self.big
        ia = idx // (self.s * self.big)
        return self.small_values[ia], b, self.small_values[ic]

    def split_line_ids(self, idx):
        idx = np.asarray(idx)
        iz = idx % self.s
        y = (idx // self.s) % self.big
        x = idx // (self.s * self.big)
        return x, y, self.small_values[iz]


_COORDS_CACHE = {}


def _coords(ctx):
    key = (ctx.family, ctx.q if isinstance(ctx, FieldCtx) else ctx.n)
    if key not in _COORDS_CACHE:
        _COORDS_CACHE[key] = _Coords(ctx)
    return _COORDS_CACHE[key]


def _check_small(co, v, name):
    if not (0 <= int(v) < co.big) or co.small_index[int(v)] < 0:
        raise ValueError(f"{name}={v} is not a valid small coordinate for {_label(co.ctx)}")


def _check_big(co, v, name):
    if not 0 <= int(v) < co.big:
        raise ValueError(f"{name}={v} is not a valid big coordinate for {_label(co.ctx)}")


def _check_point(co, p):
    if not isinstance(p, tuple) or len(p) != 3:
        raise TypeError(f"expected a point (a, b, c), got {p!r}")
    _check_small(co, p[0], "a")
    _check_big(co, p[1], "b")
    _check_small(co, p[2], "c")


def _check_line(co, l):
    if not isinstance(l, tuple) or len(l) != 3:
        raise TypeError(f"expected a line [x, y, z], got {l!r}")
    _check_big(co, l[0], "x")
    _check_big(co, l[1], "y")
    _check_small(co, l[2], "z")


def _label(ctx):
    if isinstance(ctx, FieldCtx):
        return f"F(F_{ctx.q}, F_{ctx.q ** 2})"
    return f"F(Z_{ctx.n}, Z_{ctx.n ** 2})"


# ---------------------------------------------------------------------------
# scalar API
# ---------------------------------------------------------------------------

def incident(ctx, p, l):
    """True iff point ``p`` lies on line ``l``."""
    co = _coords(ctx)
    _check_point(co, p)
    _check_line(co, l)
    a, b, c = (int(v) for v in p)
    x, y, z = (int(v) for v in l)
    y_expected, z_expected = co.line_through(a, b, c, x)
    return int(y_expected) == y and int(z_expected) == z


def line_through(ctx, p, x, restriction=None):
    """The unique line with first coordinate ``x`` through ``p``."""
    co = _coords(ctx)
    _check_point(co, p)
    _check_big(co, x, "x")
    if restriction is not None and int(x) not in set(int(r) for r in restriction):
        raise ValueError(f"x={x} is outside the line restriction")
    a, b, c = (int(v) for v in p)
    y, z = co.line_through(a, b, c, int(x))
    return Line(int(x), int(y), int(z))


def point_on(ctx, l, a):
    """The unique point with first coordinate ``a`` on ``l``."""
    co = _coords(ctx)
    _check_line(co, l)
    _check_small(co, a, "a")
    x, y, z = (int(v) for v in l)
    b, c = co.point_on(x, y, z, int(a))
    return Point(int(a), int(b), int(c))


def point_index(ctx, p):
    co = _coords(ctx)
    _check_point(co, p)
    return int(co.point_ids(*(int(v) for v in p)))


def line_index(ctx, l):
    co = _coords(ctx)
    _check_line(co, l)
    return int(co.line_ids(*(int(v) for v in l)))


def point_from_index(ctx, idx):
    a, b, c = _coords(ctx).split_point_ids(idx)
    return Point(int(a), int(b), int(c))


def line_from_index(ctx, idx):
    x, y, z = _coords(ctx).split_line_ids(idx)
    return Line(int(x), int(y), int(z))


# ---------------------------------------------------------------------------
# graph objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphSpec:
    """Recipe for an incidence graph; edges are always recomputed from it."""

    family: str
    base: int
    restriction: Optional[tuple] = None
    component: str = "all"

    def __post_init__(self):
        if self.family not in ("field", "ring"):
            raise ValueError(f"family must be 'field' or 'ring', got {self.family!r}")
        if self.component not in ("all", "largest"):
            raise ValueError(f"component must be 'all' or 'largest', got {self.component!r}")
        if self.restriction is not None:
            r = tuple(int(v) for v in self.restriction)
            if not r:
                raise ValueError("restriction must be nonempty")
            if len(set(r)) != len(r):
                raise ValueError("restriction members must be distinct")
            object.__setattr__(self, "restriction", r)

    def context(self):
        return context_for(self.family, self.base)

    def to_json(self):
        ctx = self.context()
        doc = {
            "family": self.family,
            "base": self.base,
            "modulus": ctx.describe() if isinstance(ctx, FieldCtx) else f"Z_{self.base}^2",
            "restriction": list(self.restriction) if self.restriction is not None else None,
            "component": self.component,
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        missing = {"family", "base"} - set(doc)
        if missing:
            raise ValueError(f"graph spec is missing {sorted(missing)}")
        spec = cls(
            family=doc["family"],
            base=int(doc["base"]),
            restriction=tuple(doc["restriction"]) if doc.get("restriction") is not None else None,
            component=doc.get("component", "all"),
        )
        ctx = spec.context()
        if isinstance(ctx, FieldCtx) and doc.get("modulus") not in (None, ctx.describe()):
            raise ValueError(
                f"graph spec modulus {doc['modulus']!r} differs from canonical {ctx.describe()!r}"
            )
        return spec


@dataclass(frozen=True, eq=False)
class IncidenceGraph:
    """Bipartite point/line graph stored as point-side CSR adjacency.

    ``point_ids`` / ``line_ids`` hold the global mixed-radix indices of the
    retained vertices (ascending); ``indices`` refer to *local* line
    positions, i.e. columns of the parity-check matrix.
    """

    spec: Optional[GraphSpec]
    point_ids: np.ndarray
    line_ids: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def num_points(self):
        return len(self.point_ids)

    @property
    def num_lines(self):
        return len(self.line_ids)

    @property
    def num_vertices(self):
        return self.num_points + self.num_lines

    @property
    def num_edges(self):
        return len(self.indices)

    @property
    def context(self):
        return None if self.spec is None else self.spec.context()

    def point_degrees(self):
        return np.diff(self.indptr)

    def line_degrees(self):
        return np.bincount(self.indices, minlength=self.num_lines)

    def point_neighbors(self, i):
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def biadjacency(self):
        """Sparse ``num_points x num_lines`` 0/1 matrix (CSR)."""
        if "csr" not in self._cache:
            data = np.ones(self.num_edges, dtype=np.uint8)
            self._cache["csr"] = sparse.csr_matrix(
                (data, self.indices, self.indptr), shape=(self.num_points, self.num_lines)
            )
        return self._cache["csr"]

    def line_adjacency(self):
        """``(indptr, indices)`` of the line side, neighbours as local point positions."""
        csc = self.biadjacency().tocsc()
        csc.sort_indices()
        return csc.indptr, csc.indices

    def adjacency_lists(self):
        """Plain adjacency lists over vertices ``0..P-1`` (points) and ``P..P+L-1`` (lines)."""
        if "adj" not in self._cache:
            P = self.num_points
            adj = [(self.indices[self.indptr[i]:self.indptr[i + 1]] + P).tolist() for i in range(P)]
            lptr, lind = self.line_adjacency()
            adj += [lind[lptr[j]:lptr[j + 1]].tolist() for j in range(self.num_lines)]
            self._cache["adj"] = adj
        return self._cache["adj"]

    def points(self):
        """Coordinates of the retained points (requires a graph spec)."""
        co = _coords(self.context)
        return [Point(*(int(v) for v in t)) for t in zip(*co.split_point_ids(self.point_ids))]

    def lines(self):
        co = _coords(self.context)
        return [Line(*(int(v) for v in t)) for t in zip(*co.split_line_ids(self.line_ids))]

    def has_edge(self, i, j):
        nb = self.point_neighbors(i)
        k = np.searchsorted(nb, j)
        return bool(k < len(nb) and nb[k] == j)

    # -- generic constructors, used for fixtures and imported codes -------
    @classmethod
    def from_biadjacency(cls, matrix, spec=None):
        m = sparse.csr_matrix(matrix, dtype=np.uint8)
        m.sum_duplicates()
        m.eliminate_zeros()
        m.sort_indices()
        return cls(
            spec,
            np.arange(m.shape[0], dtype=np.int64),
            np.arange(m.shape[1], dtype=np.int64),
            m.indptr.astype(np.int64),
            m.indices.astype(np.int64),
        )

    def subgraph(self, points, lines, spec=None):
        """Induced subgraph on the given local point and line positions."""
        points = np.unique(np.asarray(points, dtype=np.int64))
        lines = np.unique(np.asarray(lines, dtype=np.int64))
        sub = self.biadjacency()[points][:, lines]
        sub = sparse.csr_matrix(sub)
        sub.sort_indices()
        return IncidenceGraph(
            spec if spec is not None else self.spec,
            self.point_ids[points],
            self.line_ids[lines],
            sub.indptr.astype(np.int64),
            sub.indices.astype(np.int64),
        )

    def without_edge(self, i, j):
        m = self.biadjacency().tolil(copy=True)
        if not m[i, j]:
            raise ValueError(f"no edge between point {i} and line {j}")
        m[i, j] = 0
        g = IncidenceGraph.from_biadjacency(m.tocsr(), spec=None)
        return replace(g, point_ids=self.point_ids, line_ids=self.line_ids, _cache={})


def canonical_restriction(ctx, r):
    """The first ``r`` x-values in canonical order."""
    if not 1 <= r <= ctx.order:
        raise ValueError(f"restriction size must be in [1, {ctx.order}], got {r}")
    return tuple(range(r))


def _check_restriction(ctx, R):
    R = tuple(int(v) for v in R)
    if not R:
        raise ValueError("restriction must be nonempty")
    if len(set(R)) != len(R):
        raise ValueError("restriction members must be distinct")
    bad = [v for v in R if not 0 <= v < ctx.order]
    if bad:
        raise ValueError(f"restriction members outside the x-domain: {bad}")
    return R


def build_graph(spec, max_edges=DEFAULT_MAX_EDGES):
    """Enumerate all incidences for ``spec``.

    Adjacency is produced point by point via the unique line through each
    point with each admissible ``x``.
    """
    ctx = spec.context()
    co = _coords(ctx)
    B, s = co.big, co.s
    xs = np.arange(B, dtype=np.int64) if spec.restriction is None else np.array(
        sorted(_check_restriction(ctx, spec.restriction)), dtype=np.int64)
    num_points = s * B * s
    num_edges = num_points * len(xs)
    if num_edges > max_edges:
        raise MemoryError(
            f"{_label(ctx)} with {len(xs)} x-values has {num_edges} edges, budget is {max_edges}"
        )

    pid = np.arange(num_points, dtype=np.int64)
    a, b, c = co.split_point_ids(pid)
    A, X = a[:, None], xs[None, :]
    y, z = co.line_through(A, b[:, None], c[:, None], X)
    lid = co.line_ids(np.broadcast_to(X, y.shape), y, z)
    # lines with x in R, all y, all z, in ascending index order
    line_ids = ((xs[:, None] * B + np.arange(B)[None, :]).ravel()[:, None] * s
                + np.arange(s)[None, :]).ravel()
    local = np.searchsorted(line_ids, lid)
    local.sort(axis=1)
    indptr = np.arange(num_points + 1, dtype=np.int64) * len(xs)
    g = IncidenceGraph(replace(spec, component="all"), pid, line_ids, indptr, local.ravel())
    if spec.component == "largest":
        g = select_component(g, "largest")
    return g


def restrict_lines(g, R):
    """Keep every point and only the lines whose ``x`` lies in ``R``."""
    if g.spec is None:
        raise ValueError("restriction needs a graph built from a GraphSpec")
    ctx = g.context
    R = _check_restriction(ctx, R)
    co = _coords(ctx)
    x, _, _ = co.split_line_ids(g.line_ids)
    keep = np.flatnonzero(np.isin(x, np.array(R)))
    if g.spec.restriction is not None:
        R = tuple(v for v in R if v in set(g.spec.restriction))
    spec = replace(g.spec, restriction=R)
    return g.subgraph(np.arange(g.num_points), keep, spec=spec)


def connected_components(g):
    """Vertex sets (points ``0..P-1``, lines ``P..``) sorted by size, then smallest member."""
    P, L = g.num_points, g.num_lines
    bi = g.biadjacency()
    full = sparse.bmat([[None, bi], [bi.T, None]], format="csr", dtype=np.uint8) if P and L else \
        sparse.csr_matrix((P + L, P + L), dtype=np.uint8)
    n, labels = csgraph.connected_components(full, directed=False)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    comps = np.split(order, bounds) if len(order) else []
    comps.sort(key=lambda v: (-len(v), int(v[0])))
    return comps


def select_component(g, which="largest"):
    """Restrict ``g`` to one connected component (or return it unchanged for ``'all'``)."""
    if which == "all":
        return g
    if which != "largest":
        raise ValueError(f"unknown component selection {which!r}")
    comps = connected_components(g)
    if len(comps) <= 1:
        spec = None if g.spec is None else replace(g.spec, component="largest")
        return replace(g, spec=spec, _cache={})
    verts = comps[0]
    P = g.num_points
    spec = None if g.spec is None else replace(g.spec, component="largest")
    return g.subgraph(verts[verts < P], verts[verts >= P] - P, spec=spec)
