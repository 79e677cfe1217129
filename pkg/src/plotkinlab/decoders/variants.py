"""Hidden-codeword decoding variants for double-Plotkin codes.

A received word y = |y0|y1|y2|y3| carries |x0|x0x1|x0x2|x0x1x2x3| (BPSK, so
addition of binary words is multiplication).  Joining blocks uncovers the
hidden words x1, x2, x3 and their products; adding blocks after removing
known words gives repeated noisy copies.

Hidden words are identified by a 3-bit mask: bit 0 is x1, bit 1 is x2 and
bit 2 is x3 (so mask 3 is x1x2).  A block's content adds bit 3 for x0.
Each variant is a table of steps interpreted by one engine; the tables are
checked at import time: the contents of joined operands must multiply out to
the target, and added operands must carry the same content.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .. import _kernels
from ..bincode import CodeError, plotkin
from ..softops import (
    OpCounter,
    add_four,
    add_join_terms,
    correlation,
    correlation_via_add_four,
    join_add_terms,
    join_many,
    split_blocks,
)

X1, X2, X3 = 1, 2, 4
X0 = 8
BLOCK = (X0, X0 | X1, X0 | X2, X0 | X1 | X2 | X3)
# component index whose decoder handles a hidden word (valid for C3 ⊂ C2 ⊆ C1)
CODE_FOR_MASK = {X3: 3, X2: 2, X2 | X3: 2, X1: 1, X1 | X2: 1, X1 | X3: 1, X1 | X2 | X3: 1}

V4_PAIRS = ((0, 1), (0, 2), (1, 2))
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
V4_EQUIVALENT = {(1, 3): (0, 2), (2, 3): (0, 1), (0, 3): (1, 2)}


@dataclass(frozen=True)
class Step:
    op: str  # "join" | "join_add" | "add_join" | "derive"
    terms: tuple
    target: int


def J(*terms, to):
    return Step("join", tuple(terms), to)


def JA(a, b, c, d, to):
    return Step("join_add", ((a, b), (c, d)), to)


def AJ(a, b, c, d, to):
    return Step("add_join", ((a, b), (c, d)), to)


def D(m1, m2, to):
    return Step("derive", (m1, m2), to)


JOIN4 = J((0, 0), (1, 0), (2, 0), (3, 0), to=X3)

V4_STEPS = {
    (0, 2): [
        JOIN4,
        JA((0, 0), (2, 0), (1, 0), (3, X3), to=X2),
        AJ((0, 0), (2, X2), (1, 0), (3, X2 | X3), to=X1),
    ],
    (0, 1): [
        JOIN4,
        JA((0, 0), (1, 0), (2, 0), (3, X3), to=X1),
        AJ((0, 0), (1, X1), (2, 0), (3, X1 | X3), to=X2),
    ],
    (1, 2): [
        JOIN4,
        JA((1, 0), (2, 0), (0, 0), (3, X3), to=X1 | X2),
        AJ((0, 0), (3, X1 | X2 | X3), (1, 0), (2, X1 | X2), to=X1),
        D(X1 | X2, X1, to=X2),
    ],
}

V_STEPS = {
    (0, 1): [
        J((0, 0), (1, 0), to=X1),
        J((2, 0), (3, X1), to=X3),
        AJ((0, 0), (1, X1), (2, 0), (3, X1 | X3), to=X2),
    ],
    (0, 2): [
        J((0, 0), (2, 0), to=X2),
        J((1, 0), (3, X2), to=X3),
        AJ((0, 0), (2, X2), (1, 0), (3, X2 | X3), to=X1),
    ],
    (0, 3): [
        J((0, 0), (3, 0), to=X1 | X2 | X3),
        J((1, 0), (2, X1 | X2 | X3), to=X3),
        D(X1 | X2 | X3, X3, to=X1 | X2),
        AJ((0, 0), (3, X1 | X2 | X3), (1, 0), (2, X1 | X2), to=X1),
        D(X1 | X2, X1, to=X2),
    ],
    (1, 2): [
        J((1, 0), (2, 0), to=X1 | X2),
        J((0, 0), (3, X1 | X2), to=X3),
        AJ((0, 0), (3, X1 | X2 | X3), (1, 0), (2, X1 | X2), to=X1),
        D(X1 | X2, X1, to=X2),
    ],
    (1, 3): [
        J((1, 0), (3, 0), to=X2 | X3),
        J((0, 0), (2, X2 | X3), to=X3),
        D(X2 | X3, X3, to=X2),
        AJ((0, 0), (2, X2), (1, 0), (3, X2 | X3), to=X1),
    ],
    # the third step targets x2, so the C2 decoder handles it (not C1)
    (2, 3): [
        J((2, 0), (3, 0), to=X1 | X3),
        J((0, 0), (1, X1 | X3), to=X3),
        D(X1 | X3, X3, to=X1),
        AJ((0, 0), (1, X1), (2, 0), (3, X1 | X3), to=X2),
    ],
}


def _content(term):
    blk, scale = term
    return BLOCK[blk] ^ scale


def _check_table(steps, known):
    known = set(known)
    for st in steps:
        if st.op == "derive":
            assert st.terms[0] in known and st.terms[1] in known, st
            assert st.terms[0] ^ st.terms[1] == st.target, st
        else:
            groups = st.terms if st.op != "join" else tuple((t,) for t in st.terms)
            for g in groups:
                for _, s in g:
                    assert s == 0 or _derivable(s, known), (st, s)
            if st.op == "join":
                acc = 0
                for t in st.terms:
                    acc ^= _content(t)
            elif st.op == "join_add":
                (a, b), (c, d) = st.terms
                assert _content(a) ^ _content(b) == _content(c) ^ _content(d), st
                acc = _content(a) ^ _content(b)
            else:
                (a, b), (c, d) = st.terms
                assert _content(a) == _content(b) and _content(c) == _content(d), st
                acc = _content(a) ^ _content(c)
            assert acc == st.target, (st, acc)
        known.add(st.target)
    assert {X1, X2, X3} <= known
    return True


def _derivable(mask, known):
    return any(_xor(c) == mask for r in range(1, len(known) + 1) for c in combinations(sorted(known), r))


def _xor(masks):
    acc = 0
    for m in masks:
        acc ^= m
    return acc


for _steps in V4_STEPS.values():
    _check_table(_steps, ())
for _steps in V_STEPS.values():
    _check_table(_steps, ())


# --- specs --------------------------------------------------------------------

FAMILIES = ("V4", "V", "V0", "DPLIST", "COMBO")


@dataclass(frozen=True)
class VariantSpec:
    family: str
    pair: tuple[int, int] | None = None
    list_size: int = 1
    pair2: tuple[int, int] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family}")
        if self.list_size < 1:
            raise ValueError("list size must be >= 1")
        if self.family == "V4" and self.pair not in V4_PAIRS:
            raise ValueError(f"V4 pair must be one of {V4_PAIRS}")
        if self.family in ("V", "V0") and self.pair not in PAIRS:
            raise ValueError(f"pair must be one of {PAIRS}")
        if self.family == "COMBO":
            if self.pair not in PAIRS or self.pair2 is None or set(self.pair) | set(self.pair2) != {0, 1, 2, 3}:
                raise ValueError("combo needs two complementary pairs")

    @property
    def id(self) -> str:
        f = self.family.lower()
        if self.family == "DPLIST":
            s = "dplist"
        elif self.family == "COMBO":
            s = f"combo({self.pair[0]},{self.pair[1]}|{self.pair2[0]},{self.pair2[1]})"
        else:
            s = f"{f}({self.pair[0]},{self.pair[1]})"
        return s + (f"xL{self.list_size}" if self.list_size > 1 else "")

    def __str__(self):
        return self.id


SIX_V = tuple(VariantSpec("V", p) for p in PAIRS)
MIXED = SIX_V + (VariantSpec("V4", (0, 2), 2), VariantSpec("V4", (0, 1), 2))


def check_prerequisites(dp, spec: VariantSpec):
    r = dp.relations
    if spec.family in ("V", "V0", "COMBO", "DPLIST"):
        if not (r["C3<=C2"] and r["C2<=C1"]):
            raise CodeError(f"{spec.id} needs C3 ⊂ C2 ⊆ C1")
    if spec.family in ("V0", "DPLIST") and not r["C1<=C0"]:
        raise CodeError(f"{spec.id} needs C1 ⊂ C0")


# --- engine ---------------------------------------------------------------------


@dataclass
class Candidates:
    """Batch of candidate decisions: x (R, K, N), corr (R, K), ok (R, K)."""

    x: np.ndarray
    corr: np.ndarray
    ok: np.ndarray

    @staticmethod
    def concat(items):
        return Candidates(
            np.concatenate([c.x for c in items], axis=1),
            np.concatenate([c.corr for c in items], axis=1),
            np.concatenate([c.ok for c in items], axis=1),
        )

    def best(self):
        score = np.where(self.ok, self.corr, -np.inf)
        idx = np.argmax(score, axis=1)
        r = np.arange(score.shape[0])
        return self.x[r, idx], self.corr[r, idx], self.ok[r, idx]


def hidden_word(blocks, mask):
    """Product of the hidden words in ``mask`` from ±1 blocks (used by the genie)."""
    t0, t1, t2, t3 = blocks
    x = np.ones_like(t0)
    if mask & X1:
        x = x * t0 * t1
    if mask & X2:
        x = x * t0 * t2
    if mask & X3:
        x = x * t0 * t1 * t2 * t3
    return x


class _Known:
    """Decided hidden words for the current batch of continuations."""

    def __init__(self, words=None):
        self.words = dict(words or {})

    def __setitem__(self, mask, x):
        self.words[mask] = x

    def __contains__(self, mask):
        return mask in self.words

    def word(self, mask):
        if mask == 0:
            return None
        if mask in self.words:
            return self.words[mask]
        keys = sorted(self.words)
        for r in range(2, len(keys) + 1):
            for c in combinations(keys, r):
                if _xor(c) == mask:
                    out = self.words[c[0]]
                    for m in c[1:]:
                        out = out * self.words[m]
                    return out
        raise KeyError(mask)


def _operand(blocks, known, term):
    blk, scale = term
    w = known.word(scale)
    return blocks[blk] if w is None else blocks[blk] * w


class VariantContext:
    """Component decoders for one double-Plotkin code under a strategy."""

    def __init__(self, dp, strategy):
        self.dp = dp
        self.strategy = strategy
        self.decs = [strategy.decoder(c) for c in dp.comps]
        self._plotkin = {}

    def code_of(self, mask):
        return self.dp.comps[CODE_FOR_MASK[mask]]

    def dec_of(self, mask):
        return self.decs[CODE_FOR_MASK[mask]]

    def joint_decoder(self, mask):
        i = CODE_FOR_MASK[mask]
        if i not in self._plotkin:
            code = plotkin(self.dp.comps[i], self.dp.c3)
            self._plotkin[i] = self.strategy.decoder(code)
        return self._plotkin[i]


def _soft_for(step, blocks, known, ctr):
    if step.op == "join":
        ops = [_operand(blocks, known, t) for t in step.terms]
        return join_many(ops, ctr)
    (a, b), (c, d) = step.terms
    ops = [_operand(blocks, known, t) for t in (a, b, c, d)]
    if step.op == "join_add":
        return join_add_terms(*ops, ctr)
    return add_join_terms(*ops, ctr)


def _run_steps(ctx, steps, blocks, known, ok, ctr):
    for st in steps:
        if st.op == "derive":
            x = known.word(st.terms[0]) * known.word(st.terms[1])
            ctr.add("derive", signs=x.shape[-1])
            known[st.target] = x
            ok = ok & ctx.code_of(st.target).contains_modulated(x)
            continue
        s = _soft_for(st, blocks, known, ctr)
        i = CODE_FOR_MASK[st.target]
        with ctr.section(f"C{i}"):
            x, okd = ctx.decs[i].decode(s, ctr)
        known[st.target] = x
        ok = ok & okd
    return ok


def _assemble(x0, x1, x2, x3):
    return np.concatenate([x0, x0 * x1, x0 * x2, x0 * x1 * x2 * x3], axis=-1)


def _finish_add_four(ctx, blocks, known, ok, ctr):
    x1, x2, x3 = known.word(X1), known.word(X2), known.word(X3)
    w = add_four(blocks, x1, x2, x3, ctr)
    with ctr.section("C0"):
        x0, ok0 = ctx.decs[0].decode(w, ctr)
    corr = correlation_via_add_four(x0, w, ctr)
    return _assemble(x0, x1, x2, x3), corr, ok & ok0


def _expand(blocks, L):
    return type(blocks)(*(np.repeat(b, L, axis=0) for b in blocks))


def _first_step(ctx, st, blocks, L, ctr, genie):
    """Run a (possibly list) first step; returns (words (R*L', n), ok, L')."""
    R = blocks[0].shape[0]
    if genie is not None:
        return hidden_word(genie, st.target), np.ones(R, dtype=bool), 1
    s = _soft_for(st, blocks, _Known(), ctr)
    i = CODE_FOR_MASK[st.target]
    with ctr.section(f"C{i}"):
        if L == 1:
            x, ok = ctx.decs[i].decode(s, ctr)
            return x, ok, 1
        X, _, OK = ctx.decs[i].list_decode(s, L, ctr)
    Lp = X.shape[1]
    return X.reshape(R * Lp, -1), OK.reshape(-1), Lp


def run_variant(ctx: VariantContext, y: np.ndarray, spec: VariantSpec, ctr: OpCounter, genie=None) -> Candidates:
    """All continuations of one variant for a batch ``y`` (R, 4n)."""
    blocks = split_blocks(y)
    R, n = blocks[0].shape
    if spec.family in ("V4", "V"):
        steps = (V4_STEPS if spec.family == "V4" else V_STEPS)[spec.pair]
        g = None if genie is None else split_blocks(genie)
        x, ok, Lp = _first_step(ctx, steps[0], blocks, spec.list_size, ctr, g)
        eb = _expand(blocks, Lp)
        known = _Known({steps[0].target: x})
        with ctr.scaled(Lp):
            ok = _run_steps(ctx, steps[1:], eb, known, ok, ctr)
            cw, corr, ok = _finish_add_four(ctx, eb, known, ok, ctr)
        return Candidates(cw.reshape(R, Lp, 4 * n), corr.reshape(R, Lp), ok.reshape(R, Lp))
    if spec.family == "V0":
        return _run_v0(ctx, blocks, spec, ctr)
    if spec.family == "COMBO":
        return _run_combo(ctx, blocks, spec, ctr)
    if spec.family == "DPLIST":
        return dp_list_candidates(ctx, y, spec.list_size, ctr, keep=spec.list_size)
    raise ValueError(spec.family)


def _run_v0(ctx, blocks, spec, ctr):
    i, j = spec.pair
    R, n = blocks[0].shape
    L = spec.list_size
    with ctr.section("C0"):
        A, _, OKa = ctx.decs[0].list_decode(blocks[i], L, ctr)
        B, _, OKb = ctx.decs[0].list_decode(blocks[j], L, ctr)
    La, Lb = A.shape[1], B.shape[1]
    a = np.repeat(A, Lb, axis=1).reshape(R * La * Lb, n)
    b = np.tile(B, (1, La, 1)).reshape(R * La * Lb, n)
    ok = (OKa[:, :, None] & OKb[:, None, :]).reshape(-1)
    M = (BLOCK[i] ^ BLOCK[j]) & 7
    xm = a * b
    ok = ok & ctx.code_of(M).contains_modulated(xm)
    P = La * Lb
    eb = _expand(blocks, P)
    known = _Known({M: xm})
    with ctr.scaled(P):
        ok = _run_steps(ctx, V_STEPS[spec.pair][1:], eb, known, ok, ctr)
        x0 = a if BLOCK[i] == X0 else a * known.word(BLOCK[i] & 7)
        cw = _assemble(x0, known.word(X1), known.word(X2), known.word(X3))
        corr = correlation(cw, np.concatenate(eb, axis=1), ctr)
    return Candidates(cw.reshape(R, P, 4 * n), corr.reshape(R, P), ok.reshape(R, P))


def _run_combo(ctx, blocks, spec, ctr):
    (i, j), (k, l) = spec.pair, spec.pair2
    R, n = blocks[0].shape
    A = (BLOCK[i] ^ BLOCK[j]) & 7
    left = join_many([blocks[i], blocks[j]], ctr)
    right = join_many([blocks[k], blocks[l]], ctr)
    z = np.concatenate([left, right], axis=1)
    dec = ctx.joint_decoder(A)
    with ctr.section(f"C{CODE_FOR_MASK[A]}+C3"):
        if spec.list_size == 1:
            w, ok = dec.decode(z, ctr)
            Lp = 1
        else:
            W, _, OK = dec.list_decode(z, spec.list_size, ctr)
            Lp = W.shape[1]
            w, ok = W.reshape(R * Lp, 2 * n), OK.reshape(-1)
    xa = w[:, :n]
    known = _Known({A: xa, X3: xa * w[:, n:]})
    eb = _expand(blocks, Lp)
    steps = V_STEPS[tuple(sorted((i, j)))][2:]
    with ctr.scaled(Lp):
        ok = _run_steps(ctx, steps, eb, known, ok, ctr)
        cw, corr, ok = _finish_add_four(ctx, eb, known, ok, ctr)
    return Candidates(cw.reshape(R, Lp, 4 * n), corr.reshape(R, Lp), ok.reshape(R, Lp))


def _syn_bytes(code, x):
    s = code.syndromes((x < 0).astype(np.uint8))
    return np.packbits(s, axis=-1) if s.shape[-1] else s


def dp_list_candidates(ctx, y, L, ctr, keep=None) -> Candidates:
    """Block-wise C0 lists, combined and filtered by the hidden-codeword checks.

    Pairs (a0, a1) and (a2, a3) must have products in C1, a0 a2 must be in C2
    and the product of all four in C3, so every survivor is a codeword.
    ``keep`` bounds the number of survivors returned per word (None: all).
    """
    blocks = split_blocks(y)
    R, n = blocks[0].shape
    c0, c1, c2, c3 = ctx.dp.comps
    lists = []
    with ctr.section("C0"):
        for b in blocks:
            lists.append(ctx.decs[0].list_decode(b, L, ctr))
    X = [t[0] for t in lists]
    C = [t[1] for t in lists]
    OK = [t[2] for t in lists]
    Ls = [x.shape[1] for x in X]
    s1 = [_syn_bytes(c1, x) for x in X]
    s2 = [_syn_bytes(c2, X[0]), _syn_bytes(c2, X[2])]
    s3 = [_syn_bytes(c3, x) for x in X]

    def zero(s):
        return ~np.any(s, axis=-1) if s.shape[-1] else np.ones(s.shape[:-1], dtype=bool)

    v01 = zero(s1[0][:, :, None] ^ s1[1][:, None, :])  # (R, L0, L1)
    v23 = zero(s1[2][:, :, None] ^ s1[3][:, None, :])  # (R, L2, L3)
    v02 = zero(s2[0][:, :, None] ^ s2[1][:, None, :])  # (R, L0, L2)
    t01 = s3[0][:, :, None] ^ s3[1][:, None, :]
    t23 = s3[2][:, :, None] ^ s3[3][:, None, :]
    v3 = zero(t01[:, :, :, None, None] ^ t23[:, None, None, :, :])
    valid = v3 & v01[:, :, :, None, None] & v23[:, None, None, :, :] & v02[:, :, None, :, None]
    valid &= (OK[0][:, :, None, None, None] & OK[1][:, None, :, None, None]
              & OK[2][:, None, None, :, None] & OK[3][:, None, None, None, :])
    total = (C[0][:, :, None, None, None] + C[1][:, None, :, None, None]
             + C[2][:, None, None, :, None] + C[3][:, None, None, None, :])
    flat_valid = valid.reshape(R, -1)
    flat = np.where(flat_valid, total.reshape(R, -1), -np.inf)
    P = flat.shape[1]
    ctr.add("combine", additions=3 * P)
    K = P if keep is None else min(keep, P)
    ctr.add("select", comparisons=sum(P - t for t in range(1, min(K, P - 1) + 1)))
    idx = _kernels.topk(flat, K) if K < P else np.argsort(-flat, axis=1, kind="stable")
    i0, i1, i2, i3 = np.unravel_index(idx, tuple(Ls))
    r = np.arange(R)[:, None]
    cw = np.concatenate([X[0][r, i0], X[1][r, i1], X[2][r, i2], X[3][r, i3]], axis=-1)
    corr = np.take_along_axis(flat, idx, axis=1)
    ok = np.take_along_axis(flat_valid, idx, axis=1)
    return Candidates(cw, np.where(ok, corr, -np.inf), ok)


def decode_multi_batch(ctx: VariantContext, y, specs, ctr: OpCounter, genie=None):
    """Best non-failed candidate over all variants; returns (x, corr, ok)."""
    if not specs:
        raise ValueError("need at least one variant")
    cands = []
    for spec in specs:
        with ctr.section(spec.id):
            cands.append(run_variant(ctx, y, spec, ctr, genie=genie))
    allc = Candidates.concat(cands)
    ctr.add("select", comparisons=allc.corr.shape[1] - 1)
    return allc.best()


def plotkin_list_candidates(ctx: VariantContext, y, L, ctr, first=8, second=4) -> Candidates:
    """List decoder via the Plotkin split |y0 join y2 | y1 join y3| = |x2 | x2 x3|.

    A list for P[C2 | C3] fixes x2 and x3; an add-join list for C1 follows
    and each combination is completed by an add-four decision for C0.
    """
    blocks = split_blocks(y)
    R, n = blocks[0].shape
    z = np.concatenate([join_many([blocks[0], blocks[2]], ctr), join_many([blocks[1], blocks[3]], ctr)], axis=1)
    with ctr.section("C2+C3"):
        W, _, OK = ctx.joint_decoder(X2).list_decode(z, first, ctr)
    L1 = W.shape[1]
    w = W.reshape(R * L1, 2 * n)
    x2, x3 = w[:, :n], w[:, :n] * w[:, n:]
    eb = _expand(blocks, L1)
    with ctr.scaled(L1):
        s = add_join_terms(eb.y0, eb.y2 * x2, eb.y1, eb.y3 * x2 * x3, ctr)
        with ctr.section("C1"):
            X1s, _, OK1 = ctx.decs[1].list_decode(s, second, ctr)
    L2 = X1s.shape[1]
    x1 = X1s.reshape(R * L1 * L2, n)
    eb2 = _expand(eb, L2)
    ok = np.repeat(OK.reshape(-1), L2) & OK1.reshape(-1)
    known = _Known({X1: x1, X2: np.repeat(x2, L2, axis=0), X3: np.repeat(x3, L2, axis=0)})
    with ctr.scaled(L1 * L2):
        cw, corr, ok = _finish_add_four(ctx, eb2, known, ok, ctr)
    P = L1 * L2
    cands = Candidates(cw.reshape(R, P, 4 * n), corr.reshape(R, P), ok.reshape(R, P))
    K = min(L, P)
    ctr.add("select", comparisons=sum(P - t for t in range(1, min(K, P - 1) + 1)))
    score = np.where(cands.ok, cands.corr, -np.inf)
    idx = _kernels.topk(score, K)
    r = np.arange(R)[:, None]
    return Candidates(cands.x[r, idx], cands.corr[r, idx], cands.ok[r, idx])
