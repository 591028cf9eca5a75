"""Parity-check matrices, GF(2) elimination, systematic encoding and alist I/O."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import sparse

__all__ = [
    "ParityCheckMatrix",
    "LinearCode",
    "CodeSpec",
    "parity_check_from_graph",
    "gf2_rank",
    "gf2_rref",
    "systematic_generator",
    "encode",
    "syndrome",
    "hamming_distance",
    "export_alist",
    "import_alist",
    "rate_report",
    "DEFAULT_DENSE_BUDGET",
    "HAMMING_7_4",
]

# dense bit budget for elimination (rows * cols)
DEFAULT_DENSE_BUDGET = 200_000_000

HAMMING_7_4 = np.array([
    [1, 1, 1, 0, 1, 0, 0],
    [1, 0, 1, 1, 0, 1, 0],
    [1, 1, 0, 1, 0, 0, 1],
], dtype=np.uint8)


class ParityCheckMatrix:
    """Sparse binary ``m x n`` matrix with both row and column access.

    Rows are parity checks, columns are codeword bits.
    """

    def __init__(self, matrix):
        csr = sparse.csr_matrix(matrix, dtype=np.uint8)
        csr.sum_duplicates()
        csr.data %= 2
        csr.eliminate_zeros()
        csr.sort_indices()
        csr.data[:] = 1
        self.csr = csr
        self.csc = csr.tocsc()
        self.csc.sort_indices()

    @classmethod
    def from_supports(cls, n_cols, rows):
        """Build from per-row column index lists."""
        indptr = np.cumsum([0] + [len(r) for r in rows])
        indices = np.concatenate([np.asarray(r, dtype=np.int64) for r in rows]) if rows else \
            np.zeros(0, dtype=np.int64)
        data = np.ones(len(indices), dtype=np.uint8)
        return cls(sparse.csr_matrix((data, indices, indptr), shape=(len(rows), n_cols)))

    @property
    def shape(self):
        return self.csr.shape

    @property
    def m(self):
        return self.csr.shape[0]

    @property
    def n(self):
        return self.csr.shape[1]

    @property
    def nnz(self):
        return self.csr.nnz

    def row(self, i):
        return self.csr.indices[self.csr.indptr[i]:self.csr.indptr[i + 1]]

    def col(self, j):
        return self.csc.indices[self.csc.indptr[j]:self.csc.indptr[j + 1]]

    def row_weights(self):
        return np.diff(self.csr.indptr)

    def col_weights(self):
        return np.diff(self.csc.indptr)

    def to_dense(self):
        return self.csr.toarray().astype(np.uint8)

    def __eq__(self, other):
        if not isinstance(other, ParityCheckMatrix):
            return NotImplemented
        return self.shape == other.shape and (self.csr != other.csr).nnz == 0

    def __repr__(self):
        return f"ParityCheckMatrix({self.m}x{self.n}, nnz={self.nnz})"


def _as_pcm(H):
    return H if isinstance(H, ParityCheckMatrix) else ParityCheckMatrix(H)


def parity_check_from_graph(g):
    """Rows are points (checks), columns are lines (bits)."""
    if g.num_points == 0 or g.num_lines == 0:
        raise ValueError("graph has an empty side")
    return ParityCheckMatrix(g.biadjacency())


# ---------------------------------------------------------------------------
# bit-packed GF(2) elimination
# ---------------------------------------------------------------------------

def _pack(H, budget):
    m, n = H.shape
    if m * n > budget:
        raise MemoryError(f"{m}x{n} exceeds the dense elimination budget of {budget} bits")
    dense = H.to_dense() if isinstance(H, ParityCheckMatrix) else np.asarray(H, dtype=np.uint8) & 1
    words = max(1, (n + 63) // 64)
    padded = np.zeros((m, words * 64), dtype=np.uint8)
    padded[:, :n] = dense
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).copy(), n


def _eliminate(packed, n, full=False):
    """In-place Gauss-Jordan (``full``) or forward elimination; returns pivot columns."""
    m = packed.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for col in range(n):
        if r == m:
            break
        w, b = col >> 6, np.uint64(col & 63)
        colbits = (packed[r:, w] >> b) & one
        hits = np.flatnonzero(colbits)
        if len(hits) == 0:
            continue
        p = r + hits[0]
        if p != r:
            packed[[r, p]] = packed[[p, r]]
        lo = 0 if full else r + 1
        rows = lo + np.flatnonzero((packed[lo:, w] >> b) & one)
        rows = rows[rows != r]
        if len(rows):
            packed[rows] ^= packed[r]
        pivots.append(col)
        r += 1
    return pivots


def _unpack(packed, n):
    return np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")[:, :n]


def gf2_rank(H, budget=DEFAULT_DENSE_BUDGET):
    """Rank over GF(2); ``H`` is not modified."""
    packed, n = _pack(H, budget)
    if packed.shape[0] == 0:
        return 0
    return len(_eliminate(packed, n))


def gf2_rref(H, budget=DEFAULT_DENSE_BUDGET):
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    packed, n = _pack(H, budget)
    pivots = _eliminate(packed, n, full=True) if packed.shape[0] else []
    return _unpack(packed[:len(pivots)], n), pivots


@dataclass
class LinearCode:
    """A binary code given by ``H`` together with a systematic encoder.

    Codewords are assembled from ``msg`` placed on the free (non-pivot)
    columns ``perm[:k]`` and parity bits ``parity @ msg`` on the pivot
    columns ``perm[k:]``.
    """

    H: ParityCheckMatrix
    rank: int
    perm: np.ndarray
    parity: np.ndarray

    @property
    def n(self):
        return self.H.n

    @property
    def k(self):
        return self.n - self.rank

    @property
    def rate(self):
        return self.k / self.n

    def generator(self):
        """``G = [I_k | parity^T]`` in permuted column order."""
        return np.hstack([np.eye(self.k, dtype=np.uint8), self.parity.T.astype(np.uint8)])

    def encode(self, msg):
        return encode(self, msg)

    @classmethod
    def from_parity_check(cls, H, budget=DEFAULT_DENSE_BUDGET):
        G, perm = systematic_generator(H, budget=budget)
        H = _as_pcm(H)
        k = G.shape[0]
        return cls(H, H.n - k, perm, np.ascontiguousarray(G[:, k:].T))

    @classmethod
    def uncoded(cls, n):
        """Pass-through baseline: no checks, every bit is information."""
        H = ParityCheckMatrix(sparse.csr_matrix((0, n), dtype=np.uint8))
        return cls(H, 0, np.arange(n), np.zeros((0, n), dtype=np.uint8))


def systematic_generator(H, budget=DEFAULT_DENSE_BUDGET, allow_empty=False):
    """Return ``(G, perm)`` with ``G = [I_k | A]`` in permuted column order.

    Column ``j`` of ``G`` corresponds to column ``perm[j]`` of ``H``: the
    first ``k`` entries of ``perm`` are the free columns of the reduced
    echelon form of ``H``, the rest its pivot columns.
    """
    H = _as_pcm(H)
    n = H.n
    rref, pivots = gf2_rref(H, budget) if H.m else (np.zeros((0, n), dtype=np.uint8), [])
    free = np.setdiff1d(np.arange(n), pivots)
    k = len(free)
    if k == 0 and not allow_empty:
        raise ValueError("code has dimension 0")
    perm = np.concatenate([free, np.asarray(pivots, dtype=np.int64)]).astype(np.int64)
    # pivot bit i = sum over free f of rref[i, f] * bit f
    A = rref[:, free].T if len(pivots) else np.zeros((k, 0), dtype=np.uint8)
    G = np.hstack([np.eye(k, dtype=np.uint8), A.astype(np.uint8)])
    return G, perm


def encode(code, msg, perm=None):
    """Encode ``msg`` (length k, or a batch of shape ``(frames, k)``).

    ``code`` is either a :class:`LinearCode` or a generator matrix ``G``,
    in which case ``perm`` must be given.
    """
    msg = np.asarray(msg, dtype=np.uint8)
    if isinstance(code, LinearCode):
        k, n, perm, parity = code.k, code.n, code.perm, code.parity
    else:
        G = np.asarray(code, dtype=np.uint8)
        if perm is None:
            raise ValueError("a column permutation is required with a raw generator")
        k, n = G.shape
        parity = G[:, k:].T
    if msg.shape[-1] != k:
        raise ValueError(f"message length {msg.shape[-1]} != k = {k}")
    batch = msg.reshape(-1, k)
    parity_bits = (batch.astype(np.int64) @ parity.T.astype(np.int64)) & 1 if parity.size else \
        np.zeros((batch.shape[0], n - k), dtype=np.int64)
    out = np.empty((batch.shape[0], n), dtype=np.uint8)
    out[:, perm[:k]] = batch
    out[:, perm[k:]] = parity_bits
    return out.reshape(msg.shape[:-1] + (n,))


def syndrome(H, word):
    """``H @ word^T`` over GF(2); ``word`` may be a batch ``(frames, n)``."""
    H = _as_pcm(H)
    word = np.asarray(word)
    if word.shape[-1] != H.n:
        raise ValueError(f"word length {word.shape[-1]} != n = {H.n}")
    s = (H.csr.astype(np.int64) @ word.reshape(-1, H.n).T.astype(np.int64)) & 1
    return s.T.reshape(word.shape[:-1] + (H.m,)).astype(np.uint8)


def hamming_distance(x, y):
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return int(np.count_nonzero(x != y))


# ---------------------------------------------------------------------------
# alist
# ---------------------------------------------------------------------------

def export_alist(H):
    """Padded alist text (1-based indices, zero padding)."""
    H = _as_pcm(H)
    m, n = H.shape
    cw, rw = H.col_weights(), H.row_weights()
    max_c = int(cw.max()) if n else 0
    max_r = int(rw.max()) if m else 0

    def pad(idx, width):
        vals = [str(int(v) + 1) for v in idx] + ["0"] * (width - len(idx))
        return " ".join(vals)

    lines = [f"{n} {m}", f"{max_c} {max_r}",
             " ".join(str(int(v)) for v in cw), " ".join(str(int(v)) for v in rw)]
    lines += [pad(H.col(j), max_c) for j in range(n)]
    lines += [pad(H.row(i), max_r) for i in range(m)]
    return "\n".join(lines) + "\n"


def import_alist(text):
    """Parse alist text, padded or unpadded, with consistency checks."""
    rows = [ln.split() for ln in text.strip().splitlines()]
    try:
        rows = [[int(v) for v in r] for r in rows]
    except ValueError as exc:
        raise ValueError(f"alist contains a non-integer token: {exc}") from None
    if len(rows) < 4 or len(rows[0]) != 2 or len(rows[1]) != 2:
        raise ValueError("alist header must be 'N M' and 'max_col max_row'")
    (n, m), (max_c, max_r) = rows[0], rows[1]
    cw, rw = rows[2], rows[3]
    if len(cw) != n or len(rw) != m:
        raise ValueError("alist weight lines do not match N and M")
    if len(rows) != 4 + n + m:
        raise ValueError(f"alist should have {4 + n + m} lines, found {len(rows)}")
    if (cw and max(cw) != max_c) or (rw and max(rw) != max_r):
        raise ValueError("alist maximum weights disagree with the weight lists")

    def parse_lists(block, weights, bound, what):
        out = []
        for k, (entries, w) in enumerate(zip(block, weights)):
            idx = [v for v in entries if v != 0]
            if len(idx) != w:
                raise ValueError(f"{what} {k + 1}: weight {w} but {len(idx)} indices")
            if any(v < 1 or v > bound for v in idx):
                raise ValueError(f"{what} {k + 1}: index out of range 1..{bound}")
            if len(set(idx)) != len(idx):
                raise ValueError(f"{what} {k + 1}: duplicate indices")
            out.append(sorted(v - 1 for v in idx))
        return out

    cols = parse_lists(rows[4:4 + n], cw, m, "column")
    row_lists = parse_lists(rows[4 + n:], rw, n, "row")
    H = ParityCheckMatrix.from_supports(n, row_lists)
    for j, c in enumerate(cols):
        if list(H.col(j)) != c:
            raise ValueError(f"column {j + 1} disagrees with the row lists")
    return H


# ---------------------------------------------------------------------------
# rates
# ---------------------------------------------------------------------------

@dataclass
class CodeSpec:
    n: int
    checks: int
    rank: int
    design_rate: Fraction
    graph_rate: Optional[Fraction] = None

    @property
    def k(self):
        return self.n - self.rank

    @property
    def true_rate(self):
        return Fraction(self.k, self.n)

    @property
    def full_rank(self):
        return self.rank == self.checks

    @property
    def discrepancy(self):
        """True when the rank-based rate differs from the design rate."""
        return self.true_rate != self.design_rate

    def as_dict(self):
        return {
            "N": self.n, "R": self.checks, "rank": self.rank, "K": self.k,
            "design_rate": str(self.design_rate), "design_rate_approx": float(self.design_rate),
            "graph_rate": None if self.graph_rate is None else str(self.graph_rate),
            "true_rate": str(self.true_rate), "true_rate_approx": float(self.true_rate),
            "full_rank": self.full_rank, "discrepancy": self.discrepancy,
        }

    def render(self):
        lines = [
            f"N            {self.n}",
            f"R (checks)   {self.checks}",
            f"rank         {self.rank}",
            f"K = N - rank {self.k}",
            f"design rate  {self.design_rate} ~ {float(self.design_rate):.4f}",
        ]
        if self.graph_rate is not None:
            lines.append(f"graph rate   {self.graph_rate} ~ {float(self.graph_rate):.4f}")
        lines.append(f"true rate    {self.true_rate} ~ {float(self.true_rate):.4f}")
        if self.discrepancy:
            lines.append(f"note: H is not full rank ({self.checks - self.rank} redundant checks)")
        return "\n".join(lines) + "\n"


def _graph_formula_rate(g):
    """(q - 1)/q for full graphs, 1 - q/r under a line restriction."""
    spec = g.spec
    if spec is None or spec.component != "all":
        return None
    q = spec.base
    if spec.restriction is None:
        return Fraction(q - 1, q)
    return 1 - Fraction(q, len(spec.restriction))


def rate_report(source, budget=DEFAULT_DENSE_BUDGET):
    """Design rate, graph-formula rate and rank-based true rate.

    ``source`` is an incidence graph, a :class:`LinearCode` or a matrix.
    """
    graph_rate = None
    if isinstance(source, LinearCode):
        H, rank = source.H, source.rank
    else:
        if hasattr(source, "biadjacency"):
            graph_rate = _graph_formula_rate(source)
            H = parity_check_from_graph(source)
        else:
            H = _as_pcm(source)
        rank = gf2_rank(H, budget)
    design = Fraction(H.n - H.m, H.n)
    return CodeSpec(H.n, H.m, rank, design, graph_rate)
