"""BPSK over AWGN: modulation, noise, channel LLRs and per-frame RNG streams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelConfig",
    "frame_rng",
    "bpsk_modulate",
    "awgn",
    "llr_init",
    "uncoded_ber",
    "LLR_CLIP",
]

LLR_CLIP = 30.0


@dataclass(frozen=True)
class ChannelConfig:
    """Eb/N0 in dB, the code rate used to scale noise, and the stream seed.

    ``ebn0_db = math.inf`` is the noiseless channel.
    """

    ebn0_db: float
    rate: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")

    @property
    def sigma2(self):
        """Noise variance 1 / (2 R Eb/N0) for unit-energy symbols."""
        if self.ebn0_db == math.inf:
            return 0.0
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))


def frame_rng(seed, point_index, frame_index):
    """Independent generator for one frame.

    Philox is counter based: the key comes from ``(seed, point_index)`` and
    the frame index occupies the top counter word, so streams never overlap
    and do not depend on the order frames are drawn in.
    """
    key = _point_key(int(seed), int(point_index))
    counter = np.array([0, 0, 0, int(frame_index)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


_KEYS = {}


def _point_key(seed, point_index):
    k = (seed, point_index)
    if k not in _KEYS:
        ss = np.random.SeedSequence(seed, spawn_key=(point_index,))
        _KEYS[k] = ss.generate_state(2, dtype=np.uint64)
    return _KEYS[k]


def bpsk_modulate(bits):
    """0 -> +1.0, 1 -> -1.0."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def awgn(signal, cfg, frame_index=0, point_index=0, rng=None):
    """Add N(0, sigma^2) noise; the stream is fixed by ``(cfg.seed, point, frame)``."""
    signal = np.asarray(signal, dtype=np.float64)
    sigma2 = cfg.sigma2
    if sigma2 == 0.0:
        return signal.copy()
    if rng is None:
        rng = frame_rng(cfg.seed, point_index, frame_index)
    return signal + math.sqrt(sigma2) * rng.standard_normal(signal.shape)


def llr_init(received, cfg, clip=LLR_CLIP):
    """2 r / sigma^2, positive favouring bit 0.

    On the noiseless channel the LLRs saturate at ``+-clip``.
    """
    received = np.asarray(received, dtype=np.float64)
    sigma2 = cfg.sigma2 if isinstance(cfg, ChannelConfig) else float(cfg)
    if sigma2 == 0.0:
        return clip * np.sign(received)
    return 2.0 * received / sigma2


def uncoded_ber(ebn0_db):
    """Q(sqrt(2 Eb/N0)), the BPSK bit error probability without coding."""
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    return 0.5 * math.erfc(math.sqrt(ebn0))
