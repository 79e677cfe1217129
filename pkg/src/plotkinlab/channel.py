"""BPSK over AWGN / BSC, SNR bookkeeping and per-trial random streams."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bincode import BinaryWord


def modulate(w) -> np.ndarray:
    """0 -> +1, 1 -> -1.  Accepts a BinaryWord or a 0/1 array of any shape."""
    bits = w.to_array() if isinstance(w, BinaryWord) else np.asarray(w)
    return 1.0 - 2.0 * bits.astype(np.float64)


def demodulate(x: np.ndarray) -> np.ndarray:
    return (np.asarray(x) < 0).astype(np.uint8)


def hard_decision(y) -> BinaryWord | np.ndarray:
    """Bit 0 iff y >= 0.  A 1-D input gives a BinaryWord, batches give arrays."""
    y = np.asarray(y, dtype=np.float64)
    bits = (y < 0).astype(np.uint8)
    return BinaryWord.from_bits(bits) if y.ndim == 1 else bits


def es_n0_db(eb_n0_db: float, rate: float) -> float:
    if rate <= 0:
        raise ValueError("rate must be positive")
    return eb_n0_db - 10.0 * math.log10(1.0 / rate)


def sigma_from_config(eb_n0_db: float, rate: float) -> float:
    return math.sqrt(1.0 / (2.0 * 10.0 ** (es_n0_db(eb_n0_db, rate) / 10.0)))


@dataclass(frozen=True)
class ChannelConfig:
    eb_n0_db: float
    rate: float
    seed: int = 0
    sigma: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sigma", sigma_from_config(self.eb_n0_db, self.rate))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-derived stream for trial ``trial`` of master ``seed``."""
    return np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, trial]))


def awgn(x, cfg_or_sigma, rng: np.random.Generator) -> np.ndarray:
    sigma = cfg_or_sigma.sigma if isinstance(cfg_or_sigma, ChannelConfig) else float(cfg_or_sigma)
    x = np.asarray(x, dtype=np.float64)
    return x + sigma * rng.standard_normal(x.shape)


def bsc(c, p: float, rng: np.random.Generator):
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    bits = c.to_array() if isinstance(c, BinaryWord) else np.asarray(c, dtype=np.uint8)
    flips = (rng.random(bits.shape) < p).astype(np.uint8)
    out = bits ^ flips
    return BinaryWord.from_bits(out) if isinstance(c, BinaryWord) else out


def q_function(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2.0))
