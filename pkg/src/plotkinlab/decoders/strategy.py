"""Which decoder handles which code, including recursive variant decoders."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..bincode import CodeError, LinearCode
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
)
from .variants import (
    MIXED,
    SIX_V,
    Candidates,
    VariantContext,
    VariantSpec,
    check_prerequisites,
    decode_multi_batch,
    plotkin_list_candidates,
    run_variant,
)

KINDS = (
    "zero",
    "hard",
    "repetition",
    "parity",
    "correlation",
    "simplex-ML-I",
    "simplex-ML-II",
    "concatenated",
    "recursive",
)

# Largest dimension decoded by plain enumeration when no structure applies.
AUTO_ENUM_K = 12


@dataclass(frozen=True)
class Choice:
    kind: str
    variants: tuple[VariantSpec, ...] = ()
    list_method: str = "variants"  # recursive lists: "variants" or "plotkin"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown decoder kind {self.kind}")


def _is_parity(code):
    return code.n > 1 and code.k == code.n - 1 and all(r.bit_count() % 2 == 0 for r in code.rows)


def auto_choice(code: LinearCode) -> Choice:
    if code.k == 0:
        return Choice("zero")
    if code.k == code.n:
        return Choice("hard")
    if code.k == 1 and code.contains_all_one:
        return Choice("repetition")
    if _is_parity(code):
        return Choice("parity")
    if code.plotkin_parts:
        c0, c1 = code.plotkin_parts
        if c1.k == 1 and c1.contains_all_one and c0.contains_all_one and c0.k <= 16:
            return Choice("simplex-ML-I")
    if code.parts:
        return Choice("concatenated")
    if code.k <= AUTO_ENUM_K:
        return Choice("correlation")
    if code.double is not None:
        return Choice("recursive", MIXED)
    if code.k <= 16:
        return Choice("correlation")
    raise CodeError(f"no decoder for {code!r}")


def build_leaf(code: LinearCode, choice: Choice) -> Decoder:
    k = choice.kind
    if k == "zero":
        return ZeroDecoder(code)
    if k == "hard":
        return HardDecoder(code)
    if k == "repetition":
        return RepetitionDecoder(code)
    if k == "parity":
        return ParityDecoder(code)
    if k == "correlation":
        return CorrelationDecoder(code)
    if k == "simplex-ML-I":
        return PlotkinRepetitionDecoder(code)
    if k == "simplex-ML-II":
        return DoubleSimplexDecoder(code)
    raise CodeError(f"{k} is not a leaf decoder")


class VariantDecoder(Decoder):
    """Decode a double-Plotkin code by running several variants and keeping
    the best correlation.  Component decoders come from the strategy, so a
    component that is itself recursive recurses."""

    name = "recursive"

    def __init__(self, code: LinearCode, specs, strategy, list_method="variants"):
        if code.double is None:
            raise CodeError(f"{code.label} has no double-Plotkin view")
        self.code = code
        self.specs = tuple(specs)
        for s in self.specs:
            check_prerequisites(code.double, s)
        self.list_method = list_method
        self.ctx = VariantContext(code.double, strategy)

    def decode(self, y, ctr):
        x, _, ok = decode_multi_batch(self.ctx, y, self.specs, ctr)
        return x, ok

    def candidates(self, y, ctr, genie=None) -> Candidates:
        items = []
        for s in self.specs:
            with ctr.section(s.id):
                items.append(run_variant(self.ctx, y, s, ctr, genie=genie))
        return Candidates.concat(items)

    def list_decode(self, y, L, ctr):
        if self.list_method == "plotkin":
            c = plotkin_list_candidates(self.ctx, y, L, ctr)
            return c.x, c.corr, c.ok
        c = self.candidates(y, ctr)
        R, K, N = c.x.shape
        ctr.add("select", comparisons=K - 1)
        # drop repeated codewords, keeping the first occurrence
        packed = np.packbits(c.x < 0, axis=-1)
        same = np.all(packed[:, :, None, :] == packed[:, None, :, :], axis=-1)
        earlier = np.tril(np.ones((K, K), dtype=bool), k=-1)
        dup = np.any(same & earlier[None], axis=2)
        score = np.where(c.ok & ~dup, c.corr, -np.inf)
        L = min(L, int(np.isfinite(score).sum(axis=1).min()) or 1)
        idx = np.argsort(-score, axis=1, kind="stable")[:, :L]
        r = np.arange(R)[:, None]
        return c.x[r, idx], c.corr[r, idx], (c.ok & ~dup)[r, idx]


@dataclass
class DecoderStrategy:
    """Per-code decoder assignment keyed by code label; unlisted codes get
    :func:`auto_choice`.  Built decoders are cached."""

    rules: dict = field(default_factory=dict)
    name: str = "auto"
    _cache: dict = field(default_factory=dict, repr=False)

    def choice_for(self, code: LinearCode) -> Choice:
        c = self.rules.get(code.label)
        if c is None:
            return auto_choice(code)
        return Choice(c) if isinstance(c, str) else c

    def decoder(self, code: LinearCode) -> Decoder:
        key = (code.label, code.n, code.rows)
        if key not in self._cache:
            choice = self.choice_for(code)
            if choice.kind == "recursive":
                dec = VariantDecoder(code, choice.variants or MIXED, self, choice.list_method)
            elif choice.kind == "concatenated":
                dec = ConcatDecoder(code, [self.decoder(p) for p in code.parts])
            else:
                dec = build_leaf(code, choice)
            self._cache[key] = dec
        return self._cache[key]


def strategy_preset(name: str) -> DecoderStrategy:
    """``auto``; ``r37-sim``: the component decoders used for the R(3,7) simulations;
    ``r37-cost``: the decoders assumed by the R(3,7) complexity count."""
    if name == "auto":
        return DecoderStrategy(name="auto")
    if name == "r37-sim":
        return DecoderStrategy(
            {
                "R(2,5)": Choice("recursive", MIXED),
                "R(3,5)": Choice("recursive", SIX_V),
                "R(1,5)": Choice("simplex-ML-I"),
            },
            name="r37-sim",
        )
    if name == "r37-cost":
        return DecoderStrategy(
            {
                "R(3,7)": Choice("recursive", (VariantSpec("V4", (0, 2)),)),
                "R(2,5)": Choice("recursive", SIX_V),
                "R(3,5)": Choice("recursive", SIX_V),
                "R(1,5)": Choice("simplex-ML-II"),
            },
            name="r37-cost",
        )
    raise ValueError(f"unknown strategy preset {name!r}")
