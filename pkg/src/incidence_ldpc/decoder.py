"""Iterative decoding on the Tanner graph of a parity-check matrix.

Both decoders use a flooding schedule and accept either one LLR vector or a
batch ``(frames, n)``.  Every operation is row-wise, so a frame decodes to the
same bits and iteration count whether it is alone or part of a batch.
Frames leave the active set as soon as they satisfy every check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .channel import LLR_CLIP
from .code import ParityCheckMatrix

__all__ = [
    "DecodeResult",
    "TannerGraph",
    "decode_spa",
    "decode_minsum",
    "DEFAULT_MAX_ITER",
    "DEFAULT_NORMALIZATION",
]

DEFAULT_MAX_ITER = 50
DEFAULT_NORMALIZATION = 0.75

# smallest magnitude fed to phi(x) = -log(tanh(x/2)); phi(1e-12) ~ 28.3
_TINY = 1e-12


@dataclass
class DecodeResult:
    """Hard decisions with convergence status.

    For a batch, ``bits`` is ``(frames, n)`` and ``converged`` /
    ``iterations`` are per-frame arrays.
    """

    bits: np.ndarray
    converged: object
    iterations: object

    @property
    def status(self):
        if np.ndim(self.converged) == 0:
            return "converged" if self.converged else "max_iterations"
        return np.where(self.converged, "converged", "max_iterations")


class TannerGraph:
    """Edge arrays for message passing, edges in check-major order."""

    def __init__(self, H):
        csr = H.csr
        self.m, self.n = csr.shape
        self.edge_check = np.repeat(np.arange(self.m), np.diff(csr.indptr))
        self.edge_var = csr.indices.astype(np.int64)
        E = len(self.edge_var)
        self.num_edges = E
        ones = np.ones(E)
        # sums over edges grouped by check / by variable
        self.check_sum = sparse.csr_matrix((ones, (self.edge_check, np.arange(E))), shape=(self.m, E))
        self.var_sum = sparse.csr_matrix((ones, (self.edge_var, np.arange(E))), shape=(self.n, E))
        self.H = sparse.csr_matrix(csr, dtype=np.float64)
        nonempty = np.flatnonzero(np.diff(csr.indptr))
        self.seg_starts = csr.indptr[nonempty]
        seg_of_check = np.full(self.m, -1)
        seg_of_check[nonempty] = np.arange(len(nonempty))
        self.edge_seg = seg_of_check[self.edge_check]

    @classmethod
    def of(cls, H):
        tg = getattr(H, "_tanner", None)
        if tg is None:
            tg = cls(H)
            H._tanner = tg
        return tg

    def per_check(self, values):
        """Sum ``(frames, E)`` edge values per check -> ``(frames, m)``."""
        return np.asarray(self.check_sum @ values.T).T

    def per_var(self, values):
        return np.asarray(self.var_sum @ values.T).T

    def satisfied(self, bits):
        """Frames whose hard decisions give a zero syndrome."""
        if self.m == 0:
            return np.ones(bits.shape[0], dtype=bool)
        s = np.asarray(self.H @ bits.T.astype(np.float64)).T
        return ~np.any(s.astype(np.int64) & 1, axis=1)


def _phi(x):
    return -np.log(np.tanh(0.5 * x))


def _check_update_spa(tg, v2c, clip):
    mag = np.clip(np.abs(v2c), _TINY, clip)
    ph = _phi(mag)
    total = tg.per_check(ph)[:, tg.edge_check]
    ext = np.maximum(total - ph, _phi(clip))
    neg = v2c < 0
    parity = tg.per_check(neg.astype(np.float64)).astype(np.int64)[:, tg.edge_check] & 1
    sign = 1.0 - 2.0 * (parity ^ neg)
    return sign * np.minimum(_phi(ext), clip)


def _check_update_minsum(tg, v2c, clip, alpha):
    mag = np.abs(v2c)
    frames, E = mag.shape
    if E == 0:
        return np.zeros_like(v2c)
    starts = tg.seg_starts
    seg = tg.edge_seg
    min1 = np.minimum.reduceat(mag, starts, axis=1)
    pos = np.broadcast_to(np.arange(E), mag.shape)
    first = np.minimum.reduceat(np.where(mag == min1[:, seg], pos, E), starts, axis=1)
    is_min = pos == first[:, seg]
    min2 = np.minimum.reduceat(np.where(is_min, np.inf, mag), starts, axis=1)
    out_mag = np.where(is_min, min2[:, seg], min1[:, seg])
    neg = v2c < 0
    parity = tg.per_check(neg.astype(np.float64)).astype(np.int64)[:, tg.edge_check] & 1
    sign = 1.0 - 2.0 * (parity ^ neg)
    return sign * np.minimum(alpha * out_mag, clip)


def _decide(posterior):
    bits = (posterior < 0).astype(np.uint8)
    decided = ~np.any(posterior == 0, axis=1)
    return bits, decided


def _run(H, llr, max_iter, clip, update):
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if not isinstance(H, ParityCheckMatrix):
        H = ParityCheckMatrix(H)
    tg = TannerGraph.of(H)
    llr = np.asarray(llr, dtype=np.float64)
    single = llr.ndim == 1
    llr = np.atleast_2d(llr)
    if llr.shape[1] != tg.n:
        raise ValueError(f"LLR length {llr.shape[1]} != n = {tg.n}")
    frames = llr.shape[0]

    bits_out = np.zeros((frames, tg.n), dtype=np.uint8)
    converged = np.zeros(frames, dtype=bool)
    iters = np.full(frames, max_iter, dtype=np.int64)

    # a frame whose channel decisions already satisfy H needs no iterations
    bits, decided = _decide(llr)
    done = decided & tg.satisfied(bits)
    bits_out[:] = bits
    converged[done] = True
    iters[done] = 0

    active = np.flatnonzero(~done)
    L = llr[active]
    v2c = np.clip(L[:, tg.edge_var], -clip, clip)
    for it in range(1, max_iter + 1):
        if len(active) == 0:
            break
        c2v = update(tg, v2c)
        posterior = L + tg.per_var(c2v)
        bits, decided = _decide(posterior)
        bits_out[active] = bits
        ok = decided & tg.satisfied(bits)
        if ok.any():
            converged[active[ok]] = True
            iters[active[ok]] = it
            keep = ~ok
            active, L, posterior, c2v = active[keep], L[keep], posterior[keep], c2v[keep]
        v2c = np.clip(posterior[:, tg.edge_var] - c2v, -clip, clip)

    if single:
        return DecodeResult(bits_out[0], bool(converged[0]), int(iters[0]))
    return DecodeResult(bits_out, converged, iters)


def decode_spa(H, llr, max_iter=DEFAULT_MAX_ITER, clip=LLR_CLIP):
    """Log-domain sum-product decoding.

    A frame counts as converged only when every check is satisfied and no
    posterior LLR is exactly zero (an undecided bit).
    """
    return _run(H, llr, max_iter, clip, lambda tg, v2c: _check_update_spa(tg, v2c, clip))


def decode_minsum(H, llr, max_iter=DEFAULT_MAX_ITER, normalization=DEFAULT_NORMALIZATION,
                  clip=LLR_CLIP):
    """Normalized min-sum: check messages are min-magnitudes scaled by ``normalization``."""
    if not 0 < normalization <= 1:
        raise ValueError(f"normalization must be in (0, 1], got {normalization}")
    return _run(H, llr, max_iter, clip,
                lambda tg, v2c: _check_update_minsum(tg, v2c, clip, normalization))
