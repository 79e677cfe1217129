"""Soft-decision decoders: closed-form ML lemmas, enumeration, and the
hidden-codeword variant decoders for double-Plotkin codes.

The functions here take a single received word and return
:class:`DecodeOutcome` objects.  Batch work goes through decoder objects
(``strategy.decoder(code).decode(Y, ctr)``), which is what the simulator uses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bincode import LinearCode, direct_sum, plotkin, repetition_code, rm_code
from ..softops import OpCounter
from .leaf import (
    ConcatDecoder,
    CorrelationDecoder,
    Decoder,
    DoubleSimplexDecoder,
    HardDecoder,
    ParityDecoder,
    PlotkinRepetitionDecoder,
    RepetitionDecoder,
    ZeroDecoder,
    merge_order,
)
from .strategy import Choice, DecoderStrategy, VariantDecoder, auto_choice, strategy_preset
from .variants import (
    MIXED,
    SIX_V,
    Candidates,
    VariantContext,
    VariantSpec,
    V4_EQUIVALENT,
    check_prerequisites,
    decode_multi_batch,
    dp_list_candidates,
    plotkin_list_candidates,
    run_variant,
)


@dataclass
class DecodeOutcome:
    codeword: np.ndarray
    correlation: float
    counter: OpCounter
    variant_id: str = ""
    failed: bool = False


def _batch(y):
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError("expected a single received word")
    return y[None, :]


def _outcome(x, y, ctr, vid="", ok=True, corr=None):
    c = float(np.dot(x, y)) if corr is None else float(corr)
    return DecodeOutcome(x, c, ctr, vid, not bool(ok))


def _counter(ctr):
    return OpCounter() if ctr is None else ctr


def correlation_ml(code: LinearCode, y, ctr=None) -> DecodeOutcome:
    ctr = _counter(ctr)
    x, _ = CorrelationDecoder(code).decode(_batch(y), ctr)
    return _outcome(x[0], y, ctr, "correlation-ML")


def correlation_list(code: LinearCode, y, L: int, ctr=None) -> list[DecodeOutcome]:
    ctr = _counter(ctr)
    X, C, _ = CorrelationDecoder(code).list_decode(_batch(y), L, ctr)
    return [DecodeOutcome(X[0, i], float(C[0, i]), ctr, "correlation-list") for i in range(X.shape[1])]


def simplex_ml_plotkin(y, c0: LinearCode, ctr=None) -> DecodeOutcome:
    ctr = _counter(ctr)
    code = plotkin(c0, repetition_code(c0.n))
    x, _ = PlotkinRepetitionDecoder(code).decode(_batch(y), ctr)
    return _outcome(x[0], y, ctr, "simplex-ML-I")


def simplex_ml_double(y, c0: LinearCode, ctr=None) -> DecodeOutcome:
    """ML for the double-Plotkin simplex view |c0, rep, rep, {0}| of length 4n."""
    from ..bincode import double_plotkin, zero_code

    ctr = _counter(ctr)
    n = c0.n
    dp = double_plotkin(c0, repetition_code(n), repetition_code(n), zero_code(n))
    x, _ = DoubleSimplexDecoder(dp.composite).decode(_batch(y), ctr)
    return _outcome(x[0], y, ctr, "simplex-ML-II")


def parity_ml(y, ctr=None) -> DecodeOutcome:
    from ..bincode import parity_code

    ctr = _counter(ctr)
    y = np.asarray(y, dtype=np.float64)
    x, _ = ParityDecoder(parity_code(y.size)).decode(_batch(y), ctr)
    return _outcome(x[0], y, ctr, "parity-ML")


def repetition_ml(y, ctr=None) -> DecodeOutcome:
    ctr = _counter(ctr)
    y = np.asarray(y, dtype=np.float64)
    x, _ = RepetitionDecoder(repetition_code(y.size)).decode(_batch(y), ctr)
    return _outcome(x[0], y, ctr, "repetition-ML")


def _ctx(dp, strategy):
    return VariantContext(dp, strategy or DecoderStrategy())


def decode_variant(dp, y, spec: VariantSpec, strategy=None, ctr=None) -> list[DecodeOutcome]:
    ctr = _counter(ctr)
    check_prerequisites(dp, spec)
    c = run_variant(_ctx(dp, strategy), _batch(y), spec, ctr)
    return [
        DecodeOutcome(c.x[0, i], float(c.corr[0, i]), ctr, spec.id, not bool(c.ok[0, i]))
        for i in range(c.x.shape[1])
    ]


def decode_multi(dp, y, specs, strategy=None, ctr=None) -> DecodeOutcome:
    ctr = _counter(ctr)
    ctx = _ctx(dp, strategy)
    cands = []
    for s in specs:
        with ctr.section(s.id):
            cands.append(run_variant(ctx, _batch(y), s, ctr))
    allc = Candidates.concat(cands)
    ctr.add("select", comparisons=allc.corr.shape[1] - 1)
    x, corr, ok = allc.best()
    owners = [s.id for s, c in zip(specs, cands) for _ in range(c.x.shape[1])]
    score = np.where(allc.ok[0], allc.corr[0], -np.inf)
    return DecodeOutcome(x[0], float(corr[0]), ctr, owners[int(np.argmax(score))], not bool(ok[0]))


def dp_list_decode(dp, y, L: int, ctr=None, strategy=None) -> list[DecodeOutcome]:
    ctr = _counter(ctr)
    c = dp_list_candidates(_ctx(dp, strategy), _batch(y), L, ctr)
    return [
        DecodeOutcome(c.x[0, i], float(c.corr[0, i]), ctr, "dplist")
        for i in range(c.x.shape[1])
        if c.ok[0, i]
    ]


def combo_decode(dp, y, L: int = 1, ctr=None, strategy=None, pairs=((0, 1), (2, 3))) -> DecodeOutcome:
    spec = VariantSpec("COMBO", pairs[0], L, pairs[1])
    outs = decode_variant(dp, y, spec, strategy, ctr)
    return max(outs, key=lambda o: (not o.failed, o.correlation))


def decode_recursive(code: LinearCode, y, strategy=None, ctr=None) -> DecodeOutcome:
    ctr = _counter(ctr)
    dec = (strategy or DecoderStrategy()).decoder(code)
    x, ok = dec.decode(_batch(y), ctr)
    return _outcome(x[0], y, ctr, dec.name, ok[0])


def list_decode_r25(y, L: int, ctr=None, strategy=None) -> list[DecodeOutcome]:
    ctr = _counter(ctr)
    c = plotkin_list_candidates(_ctx(rm_code(2, 5).double, strategy), _batch(y), L, ctr)
    return [DecodeOutcome(c.x[0, i], float(c.corr[0, i]), ctr, "r25-list") for i in range(c.x.shape[1])]


def list_decode_concat(y, L: int, ctr=None, code: LinearCode | None = None, strategy=None) -> list[DecodeOutcome]:
    """Zig-zag merged list for a direct sum (default |R(2,5)|R(2,5)|, halves by the R(2,5) list)."""
    ctr = _counter(ctr)
    if code is None:
        code = direct_sum(rm_code(2, 5), rm_code(2, 5))
        strategy = strategy or DecoderStrategy({"R(2,5)": Choice("recursive", MIXED, "plotkin")})
    dec = (strategy or DecoderStrategy()).decoder(code)
    X, C, _ = dec.list_decode(_batch(y), L, ctr)
    return [DecodeOutcome(X[0, i], float(C[0, i]), ctr, "concat-list") for i in range(X.shape[1])]


__all__ = [
    "Candidates", "Choice", "ConcatDecoder", "CorrelationDecoder", "DecodeOutcome", "Decoder",
    "DecoderStrategy", "DoubleSimplexDecoder", "HardDecoder", "MIXED", "ParityDecoder",
    "PlotkinRepetitionDecoder", "RepetitionDecoder", "SIX_V", "V4_EQUIVALENT", "VariantContext",
    "VariantDecoder", "VariantSpec", "ZeroDecoder", "auto_choice", "combo_decode", "correlation_list",
    "correlation_ml", "decode_multi", "decode_multi_batch", "decode_recursive", "decode_variant",
    "dp_list_decode", "list_decode_concat", "list_decode_r25", "merge_order", "parity_ml",
    "repetition_ml", "run_variant", "simplex_ml_double", "simplex_ml_plotkin", "strategy_preset",
]
