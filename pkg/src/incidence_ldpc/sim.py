"""Monte-Carlo BER/FER sweeps with reproducible per-frame noise streams.

Frames are simulated in fixed-size blocks.  Every frame draws its message and
noise from its own counter-based stream keyed by ``(seed, point, frame)``, and
blocks are merged in frame order before the stopping rule is applied, so the
counts do not depend on the number of worker threads.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelConfig, awgn, bpsk_modulate, frame_rng, llr_init
from .code import encode
from .decoder import DEFAULT_MAX_ITER, DEFAULT_NORMALIZATION, decode_minsum, decode_spa

__all__ = [
    "SweepConfig",
    "BerPoint",
    "parse_grid",
    "run_point",
    "run_sweep",
    "emit_csv",
    "parse_csv",
    "CSV_HEADER",
]

CSV_HEADER = ["ebn0_db", "frames", "bits", "bit_errors", "ber", "frame_errors", "fer", "avg_iters"]


def parse_grid(text):
    """``start:step:stop`` (stop included within half a step) or a single value."""
    parts = text.split(":")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad Eb/N0 grid {text!r}; expected start:step:stop") from None
    if len(values) == 1:
        return [values[0]]
    if len(values) != 3:
        raise ValueError(f"bad Eb/N0 grid {text!r}; expected start:step:stop")
    start, step, stop = values
    if step <= 0 or not all(math.isfinite(v) for v in values):
        raise ValueError(f"bad Eb/N0 grid {text!r}; step must be positive and finite")
    if stop < start:
        raise ValueError(f"bad Eb/N0 grid {text!r}; stop < start")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return [round(start + i * step, 10) for i in range(count)]


@dataclass
class SweepConfig:
    ebn0_grid: list = field(default_factory=lambda: [0.0])
    max_frames: int = 100_000
    min_bit_errors: int = 100
    decoder: str = "spa"
    max_iter: int = DEFAULT_MAX_ITER
    normalization: float = DEFAULT_NORMALIZATION
    seed: int = 0
    source: str = "random"
    threads: int = 1
    block_size: int = 256

    def __post_init__(self):
        if not len(self.ebn0_grid):
            raise ValueError("Eb/N0 grid is empty")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.min_bit_errors < 0:
            raise ValueError("min_bit_errors must be >= 0")
        if self.decoder not in ("spa", "minsum"):
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if self.source not in ("random", "all_zero"):
            raise ValueError(f"unknown message source {self.source!r}")
        if self.threads < 1 or self.block_size < 1:
            raise ValueError("threads and block_size must be >= 1")


@dataclass
class BerPoint:
    ebn0_db: float
    frames: int
    bits: int
    bit_errors: int
    frame_errors: int
    total_iterations: int
    # sum over frames of (bit errors in the frame)^2, for the clustered variance
    sq_bit_errors: int = 0

    @property
    def ber(self):
        return self.bit_errors / self.bits if self.bits else 0.0

    @property
    def fer(self):
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def avg_iterations(self):
        return self.total_iterations / self.frames if self.frames else 0.0

    def ber_stderr(self):
        """Standard error of the BER estimate.

        Decoder errors arrive in bursts (a failed frame carries many bit
        errors), so bits are not independent trials.  The frame is the
        sampling unit: the variance of the per-frame error fraction is
        estimated from the per-frame error counts.  Without those counts the
        binomial error over bits is returned.
        """
        if not self.bits:
            return 0.0
        if self.sq_bit_errors and self.frames > 1:
            n = self.bits / self.frames
            mean = self.bit_errors / self.frames
            var = (self.sq_bit_errors - self.frames * mean * mean) / (self.frames - 1)
            return math.sqrt(max(var, 0.0) / self.frames) / n
        p = self.ber
        return math.sqrt(p * (1 - p) / self.bits)


def _decode(code, llr, cfg):
    if cfg.decoder == "spa":
        return decode_spa(code.H, llr, max_iter=cfg.max_iter)
    return decode_minsum(code.H, llr, max_iter=cfg.max_iter, normalization=cfg.normalization)


def _simulate_block(code, cfg, channel, point_index, first, count):
    """Per-frame (bit errors, frame error, iterations) for frames first..first+count-1."""
    k, n = code.k, code.n
    msgs = np.zeros((count, k), dtype=np.uint8)
    noisy = np.empty((count, n))
    words = None
    rngs = [frame_rng(channel.seed, point_index, first + i) for i in range(count)]
    if cfg.source == "random":
        for i, rng in enumerate(rngs):
            msgs[i] = rng.integers(0, 2, size=k, dtype=np.uint8)
    words = encode(code, msgs)
    tx = bpsk_modulate(words)
    for i, rng in enumerate(rngs):
        noisy[i] = awgn(tx[i], channel, rng=rng)
    llr = llr_init(noisy, channel)
    if code.H.m == 0:
        bits = (llr < 0).astype(np.uint8)
        iters = np.zeros(count, dtype=np.int64)
    else:
        res = _decode(code, llr, cfg)
        bits, iters = res.bits, res.iterations
    errors = np.count_nonzero(bits != words, axis=1)
    return errors, errors > 0, np.asarray(iters, dtype=np.int64)


def run_point(code, cfg, ebn0_db, point_index=0):
    """Simulate frames at one Eb/N0 until ``min_bit_errors`` or ``max_frames``.

    Bit errors are counted over all ``n`` codeword positions.  With
    ``min_bit_errors == 0`` exactly ``max_frames`` frames are run.
    """
    channel = ChannelConfig(ebn0_db, rate=code.rate, seed=cfg.seed)
    frames = 0
    bit_errors = frame_errors = iterations = sq_errors = 0
    pool = ThreadPoolExecutor(max_workers=cfg.threads) if cfg.threads > 1 else None
    try:
        while frames < cfg.max_frames:
            starts = []
            nxt = frames
            for _ in range(cfg.threads):
                if nxt >= cfg.max_frames:
                    break
                starts.append((nxt, min(cfg.block_size, cfg.max_frames - nxt)))
                nxt += starts[-1][1]
            job = lambda s: _simulate_block(code, cfg, channel, point_index, *s)
            results = list(pool.map(job, starts)) if pool else [job(s) for s in starts]
            errs = np.concatenate([r[0] for r in results])
            ferr = np.concatenate([r[1] for r in results])
            its = np.concatenate([r[2] for r in results])
            take = len(errs)
            if cfg.min_bit_errors > 0:
                reached = np.flatnonzero(bit_errors + np.cumsum(errs) >= cfg.min_bit_errors)
                if len(reached):
                    take = int(reached[0]) + 1
            frames += take
            bit_errors += int(errs[:take].sum())
            sq_errors += int((errs[:take].astype(np.int64) ** 2).sum())
            frame_errors += int(ferr[:take].sum())
            iterations += int(its[:take].sum())
            if take < len(errs) or (cfg.min_bit_errors > 0 and bit_errors >= cfg.min_bit_errors):
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return BerPoint(float(ebn0_db), frames, frames * code.n, bit_errors, frame_errors, iterations,
                    sq_errors)


def run_sweep(code, cfg):
    """One :class:`BerPoint` per grid value, ascending in Eb/N0."""
    grid = sorted(float(v) for v in cfg.ebn0_grid)
    return [run_point(code, cfg, e, point_index=i) for i, e in enumerate(grid)]


def _fmt_ebn0(v):
    return "inf" if v == math.inf else f"{v:.4f}"


def emit_csv(points):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in points:
        w.writerow([
            _fmt_ebn0(p.ebn0_db), p.frames, p.bits, p.bit_errors, f"{p.ber:.5e}",
            p.frame_errors, f"{p.fer:.5e}", f"{p.avg_iterations:.4f}",
        ])
    return buf.getvalue()


def parse_csv(text):
    """Rows of an emitted CSV as dicts of numbers."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        out.append({
            "ebn0_db": float(row["ebn0_db"]),
            "frames": int(row["frames"]),
            "bits": int(row["bits"]),
            "bit_errors": int(row["bit_errors"]),
            "ber": float(row["ber"]),
            "frame_errors": int(row["frame_errors"]),
            "fer": float(row["fer"]),
            "avg_iters": float(row["avg_iters"]),
        })
    return out
