"""Error-cancellation statistics of the join/add composites and the
birthday-problem estimates for collisions of channel errors."""

from __future__ import annotations

import math

import numpy as np

from ..channel import q_function, sigma_from_config, trial_rng

OPERATIONS = ("channel", "join-two", "join-four", "join-add", "add-join", "add-two", "add-four")

# Values reported for Eb/N0 = 2 dB at rate 1/2.
REFERENCE_2DB = dict(zip(OPERATIONS, (0.1041, 0.1872, 0.3036, 0.1006, 0.0725, 0.039, 0.0056)))


def _join(a, b):
    return np.where((a < 0) ^ (b < 0), -1.0, 1.0) * np.minimum(np.abs(a), np.abs(b))


def cancellation_errors(y0, y1, y2, y3) -> dict[str, int]:
    """Sign errors of every composite for blocks whose known words are all +1.

    With every hidden word known, multiplying by it only relabels the noise,
    so sending the all-one word loses no generality.
    """
    composites = {
        "channel": y0,
        "join-two": _join(y0, y1),
        "join-four": _join(_join(_join(y0, y1), y2), y3),
        "join-add": _join(y0, y1) + _join(y2, y3),
        "add-join": _join(y0 + y2, y1 + y3),
        "add-two": y0 + y1,
        "add-four": y0 + y1 + y2 + y3,
    }
    return {k: int(np.count_nonzero(v < 0)) for k, v in composites.items()}


def run_cancellation_stats(eb_n0_db: float = 2.0, rate: float = 0.5, samples: int = 1_000_000, seed: int = 0):
    """Monte Carlo error rate of each composite, one position per sample."""
    if samples < 1:
        raise ValueError("samples must be positive")
    sigma = sigma_from_config(eb_n0_db, rate)
    z = trial_rng(seed, 0).standard_normal((4, samples))
    y = 1.0 + sigma * z
    errs = cancellation_errors(*y)
    return {k: errs[k] / samples for k in OPERATIONS}


def join_four_analytic(p: float) -> float:
    """Probability of an odd number of errors among four independent bits."""
    return 4 * p * (1 - p) ** 3 + 4 * p**3 * (1 - p)


def channel_error_probability(eb_n0_db: float, rate: float) -> float:
    return q_function(1.0 / sigma_from_config(eb_n0_db, rate))


def birthday_exact(n: int, tau: int) -> float:
    """Probability that tau uniformly placed errors hit tau distinct positions."""
    if tau < 0 or n < 1:
        raise ValueError("need n >= 1 and tau >= 0")
    if tau > n:
        return 0.0
    p = 1.0
    for i in range(tau):
        p *= (n - i) / n
    return p


def birthday_approx(n: int, tau: int) -> float:
    if tau < 0 or n < 1:
        raise ValueError("need n >= 1 and tau >= 0")
    return math.exp(-tau * (tau - 1) / (2 * n))
