"""Monte Carlo word/bit error rates with the ML bound and the L-bound.

Every trial draws its information word and unit noise from its own stream
``trial_rng(seed, t)``, so trial ``t`` sees the same codeword and noise
shape at every Eb/N0 and under every decoder (paired comparisons).  Trials
are grouped into fixed chunks; chunks are evaluated by any number of
workers but merged and tested against the stop rule in chunk order, which
makes the output independent of the worker count.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import binomtest

from ..bincode import CodeError, LinearCode
from ..channel import sigma_from_config, trial_rng
from ..constructions import get_code
from ..decoders import CorrelationDecoder, Decoder, VariantDecoder, strategy_preset
from ..decoders.variants import check_prerequisites
from ..softops import OpCounter
from .specparse import format_decoder_spec, parse_decoder_spec

CSV_HEADER = (
    "code",
    "decoder",
    "ebn0_db",
    "trials",
    "word_errors",
    "wer",
    "wer_lo",
    "wer_hi",
    "bit_errors",
    "ber",
    "ml_bound_errors",
    "mean_ac_ops",
    "seed",
)

DEFAULT_CHUNK = 500


def ebn0_points(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("Eb/N0 step must be positive")
    if stop < start:
        raise ValueError("Eb/N0 stop below start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def parse_sweep(text: str) -> list[float]:
    """``"2"`` or ``"start:stop:step"`` or a comma list ``"1,2.5,3"``."""
    text = text.strip()
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3:
            raise ValueError("sweep must be start:stop:step")
        return ebn0_points(*parts)
    return [float(p) for p in text.split(",") if p.strip()]


@dataclass
class SimConfig:
    code: str
    decoder: str = "auto"
    ebn0: tuple = (2.0,)
    max_trials: int | None = 100_000
    min_errors: int | None = 200
    seed: int = 1
    workers: int = 1
    out: str | None = None
    strategy: str = "auto"
    chunk: int = DEFAULT_CHUNK
    genie: bool = False

    def __post_init__(self):
        self.ebn0 = tuple(float(e) for e in self.ebn0)
        if self.max_trials is None and self.min_errors is None:
            raise ValueError("need a trial limit or an error target")
        if self.max_trials is not None and self.max_trials < 0:
            raise ValueError("max_trials must be non-negative")
        if self.chunk < 1 or self.workers < 1:
            raise ValueError("chunk and workers must be positive")


@dataclass
class SimResult:
    code: str
    decoder: str
    ebn0_db: float
    trials: int = 0
    word_errors: int = 0
    bit_errors: int = 0
    ml_bound_errors: int = 0
    failures: int = 0
    ac_ops_total: int = 0
    info_bits: int = 0
    seed: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def wer(self) -> float:
        return self.word_errors / self.trials if self.trials else math.nan

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.info_bits) if self.trials else math.nan

    @property
    def mean_ac_ops(self) -> float:
        return self.ac_ops_total / self.trials if self.trials else math.nan

    def wer_interval(self, level: float = 0.95):
        if not self.trials:
            return math.nan, math.nan
        ci = binomtest(self.word_errors, self.trials).proportion_ci(level, method="wilson")
        return ci.low, ci.high

    def stderr(self) -> float:
        p = self.wer
        return math.sqrt(p * (1 - p) / self.trials) if self.trials else math.nan

    def csv_row(self) -> list[str]:
        lo, hi = self.wer_interval()
        return [
            self.code,
            self.decoder,
            f"{self.ebn0_db:g}",
            str(self.trials),
            str(self.word_errors),
            f"{self.wer:.6e}",
            f"{lo:.6e}",
            f"{hi:.6e}",
            str(self.bit_errors),
            f"{self.ber:.6e}",
            str(self.ml_bound_errors),
            f"{self.mean_ac_ops:.1f}",
            str(self.seed),
        ]


def ml_bound_event(x_t, x_hat, y) -> bool:
    """True when the decision correlates strictly better than the sent word."""
    return float(np.dot(x_hat, y)) > float(np.dot(x_t, y))


# --- decoder resolution ----------------------------------------------------------


@dataclass
class ResolvedDecoder:
    code: LinearCode
    decoder: Decoder
    name: str
    specs: tuple = ()


@lru_cache(maxsize=None)
def resolve_decoder(code_label: str, spec: str = "auto", strategy: str = "auto") -> ResolvedDecoder:
    """``ml`` (exhaustive correlation), ``auto`` (the strategy's own choice) or a
    variant specification applied to the outer double-Plotkin view."""
    code = get_code(code_label)
    strat = strategy_preset(strategy)
    key = spec.strip().lower()
    if key == "ml":
        return ResolvedDecoder(code, CorrelationDecoder(code), "ml")
    if key == "auto":
        return ResolvedDecoder(code, strat.decoder(code), "auto")
    specs = tuple(parse_decoder_spec(spec))
    if code.double is None:
        raise CodeError(f"{code_label} has no double-Plotkin view for variant decoding")
    for s in specs:
        check_prerequisites(code.double, s)
    return ResolvedDecoder(code, VariantDecoder(code, specs, strat), format_decoder_spec(specs), specs)


# --- the trial loop -----------------------------------------------------------------


def draw_trials(code: LinearCode, seed: int, first: int, count: int):
    """Information bits (count, k) and unit noise (count, n) for trials first..first+count-1."""
    info = np.empty((count, code.k), dtype=np.uint8)
    z = np.empty((count, code.n))
    for i in range(count):
        g = trial_rng(seed, first + i)
        info[i] = g.integers(0, 2, size=code.k, dtype=np.uint8)
        z[i] = g.standard_normal(code.n)
    return info, z


@dataclass
class TrialOutcomes:
    """Per-trial indicators for trials first..first+count-1."""

    word_error: np.ndarray
    bit_errors: np.ndarray
    ml_bound: np.ndarray
    failed: np.ndarray
    ac_ops: int


def decode_trials(code_label, spec, strategy, ebn0, seed, first, count, genie=False) -> TrialOutcomes:
    rd = resolve_decoder(code_label, spec, strategy)
    code = rd.code
    info, z = draw_trials(code, seed, first, count)
    x = 1.0 - 2.0 * code.encode_batch(info)
    y = x + sigma_from_config(ebn0, code.k / code.n) * z
    ctr = OpCounter()
    if genie:
        xh, _, ok = rd.decoder.candidates(y, ctr, genie=x).best()
    else:
        xh, ok = rd.decoder.decode(y, ctr)
    wrong = np.any(xh != x, axis=1) | ~ok
    piv = list(code.pivots)
    better = np.einsum("ij,ij->i", xh, y) > np.einsum("ij,ij->i", x, y)
    return TrialOutcomes(
        wrong,
        np.count_nonzero(xh[:, piv] != x[:, piv], axis=1),
        wrong & ok & better,
        ~ok,
        ctr.ac_ops(),
    )


def _chunk_counts(task):
    code_label, spec, strategy, genie, ebn0, seed, first, count = task
    t = decode_trials(code_label, spec, strategy, ebn0, seed, first, count, genie)
    return {
        "trials": count,
        "word_errors": int(t.word_error.sum()),
        "bit_errors": int(t.bit_errors.sum()),
        "ml_bound_errors": int(t.ml_bound.sum()),
        "failures": int(t.failed.sum()),
        "ac_ops_total": t.ac_ops * count,
    }


def _run_point(cfg: SimConfig, ebn0: float, pool, name: str) -> SimResult:
    rd = resolve_decoder(cfg.code, cfg.decoder, cfg.strategy)
    res = SimResult(cfg.code, name, ebn0, info_bits=rd.code.k, seed=cfg.seed)
    limit = cfg.max_trials if cfg.max_trials is not None else math.inf
    nxt = 0
    while res.trials < limit and (cfg.min_errors is None or res.word_errors < cfg.min_errors):
        tasks = []
        for _ in range(cfg.workers):
            if nxt >= limit:
                break
            count = int(min(cfg.chunk, limit - nxt))
            tasks.append((cfg.code, cfg.decoder, cfg.strategy, cfg.genie, ebn0, cfg.seed, nxt, count))
            nxt += count
        if not tasks:
            break
        outs = list(pool.map(_chunk_counts, tasks)) if pool is not None else [_chunk_counts(t) for t in tasks]
        for o in outs:  # merged in chunk order; later chunks are dropped once the rule fires
            for k, v in o.items():
                setattr(res, k, getattr(res, k) + v)
            if res.trials >= limit or (cfg.min_errors is not None and res.word_errors >= cfg.min_errors):
                break
    return res


def run_wer(cfg: SimConfig) -> list[SimResult]:
    if cfg.max_trials == 0:
        return []
    rd = resolve_decoder(cfg.code, cfg.decoder, cfg.strategy)
    name = rd.name + (" [L-bound]" if cfg.genie else "")
    if cfg.genie and not isinstance(rd.decoder, VariantDecoder):
        raise CodeError("the L-bound needs a variant decoder")
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        rows = [_run_point(cfg, e, pool, name) for e in cfg.ebn0]
    finally:
        if pool is not None:
            pool.shutdown()
    if cfg.out:
        write_csv(rows, cfg.out)
    return rows


def run_l_bound(cfg: SimConfig, variant=None) -> list[SimResult]:
    """WER with the first decoding step replaced by the transmitted hidden word."""
    spec = cfg.decoder if variant is None else (variant if isinstance(variant, str) else variant.id)
    c = SimConfig(**{**cfg.__dict__, "decoder": spec, "genie": True})
    return run_wer(c)


def csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()


def write_csv(rows, path: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(rows))


def paired_outcomes(code_label, specs, ebn0, trials, seed=1, strategy="auto", chunk=2000, genie=()):
    """Word-error indicators of several decoders on the same trials."""
    out = {}
    for spec in specs:
        parts = [
            decode_trials(code_label, spec, strategy, ebn0, seed, s, min(chunk, trials - s), spec in genie).word_error
            for s in range(0, trials, chunk)
        ]
        out[spec] = np.concatenate(parts)
    return out


def paired_gap(worse, better) -> tuple[float, float]:
    """Mean per-trial difference of two error indicators and its standard error."""
    d = np.asarray(worse, dtype=float) - np.asarray(better, dtype=float)
    return float(d.mean()), float(d.std(ddof=1) / math.sqrt(d.size)) if d.size > 1 else math.nan
