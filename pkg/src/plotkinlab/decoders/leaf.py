"""Closed-form and enumeration decoders for short component codes.

Every decoder works on a batch ``y`` of shape ``(R, n)`` and returns ``±1``
estimates.  ``decode`` gives ``(x, ok)``; ``list_decode`` gives
``(X, corr, ok)`` with ``X`` of shape ``(R, L', n)`` sorted by correlation
(``L' = min(L, available candidates)``).
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .. import _kernels
from ..bincode import CodeError, LinearCode
from ..softops import OpCounter

# Rows of y processed per matrix product; bounds the (rows x candidates) buffer.
_CELL_BUDGET = 1 << 22


def selection_comparisons(M: int, L: int) -> int:
    """Comparisons to pick the L best of M values by repeated maximum search."""
    return sum(M - i for i in range(1, min(L, M - 1) + 1))


def _ones(R, n):
    return np.ones((R, n))


def _sorted_list(cands, corr, L):
    """Keep the L best of ``cands`` (R, M, n) by ``corr`` (R, M); stable for ties."""
    L = min(L, corr.shape[1])
    idx = _kernels.topk(corr, L)
    X = np.take_along_axis(cands, idx[:, :, None], axis=1)
    c = np.take_along_axis(corr, idx, axis=1)
    return X, c, np.ones(c.shape, dtype=bool)


class Decoder:
    code: LinearCode
    name = "decoder"

    def decode(self, y, ctr: OpCounter):
        raise NotImplementedError

    def list_decode(self, y, L: int, ctr: OpCounter):
        x, ok = self.decode(y, ctr)
        return x[:, None, :], np.sum(x * y, axis=1)[:, None], ok[:, None]

    def __repr__(self):
        return f"{type(self).__name__}({self.code.label})"


class ZeroDecoder(Decoder):
    name = "zero"

    def __init__(self, code):
        if code.k:
            raise CodeError("not the zero code")
        self.code = code

    def decode(self, y, ctr):
        R = y.shape[0]
        return _ones(R, y.shape[1]), np.ones(R, dtype=bool)


def _flip_list(y, L, parity: int | None, ctr, kind):
    """Best L words of the form hard(y) with a few least reliable bits flipped.

    ``parity`` None means any flip pattern (full space); otherwise only
    patterns whose size has that parity per row.  Patterns range over the
    ``m`` least reliable positions, which is exact for the full space with
    m >= L and a close approximation for parity codes.
    """
    R, n = y.shape
    m = min(n, L + 2, 12)
    hard = np.where(y < 0, -1.0, 1.0)
    order = np.argsort(np.abs(y), axis=1, kind="stable")[:, :m]
    rel = np.take_along_axis(np.abs(y), order, axis=1)
    pats = np.array(list(product((0, 1), repeat=m))[:: 1], dtype=np.int8)[:, ::-1]
    pats = pats[np.argsort(pats.sum(axis=1), kind="stable")]
    cost = rel @ pats.T.astype(np.float64)  # (R, P)
    if parity is not None:
        need = ((hard < 0).sum(axis=1) % 2)[:, None]
        bad = (pats.sum(axis=1)[None, :] % 2) != need
        cost = np.where(bad, np.inf, cost)
    base = np.sum(np.abs(y), axis=1)
    corr = base[:, None] - 2.0 * cost
    L = min(L, int(np.isfinite(corr).sum(axis=1).min()))
    idx = _kernels.topk(corr, L)
    X = np.repeat(hard[:, None, :], L, axis=1)
    chosen = pats[idx]  # (R, L, m)
    rows = np.arange(R)[:, None, None]
    cols = order[:, None, :].repeat(L, axis=1)
    lst = np.arange(L)[None, :, None]
    X[rows, lst, cols] *= np.where(chosen == 1, -1.0, 1.0)
    c = np.take_along_axis(corr, idx, axis=1)
    ctr.add(kind, comparisons=selection_comparisons(corr.shape[1], L))
    return X, c, np.ones(c.shape, dtype=bool)


class HardDecoder(Decoder):
    """Full space: the hard decision is ML."""

    name = "hard"

    def __init__(self, code):
        if code.k != code.n:
            raise CodeError("not the full space")
        self.code = code

    def decode(self, y, ctr):
        ctr.add("hard", signs=y.shape[1])
        return np.where(y < 0, -1.0, 1.0), np.ones(y.shape[0], dtype=bool)

    def list_decode(self, y, L, ctr):
        ctr.add("hard", signs=y.shape[1])
        return _flip_list(y, L, None, ctr, "hard")


class RepetitionDecoder(Decoder):
    """Sign of the sum; ties (sum 0) go to the all-zero word."""

    name = "repetition"

    def __init__(self, code):
        if code.k != 1 or not code.contains_all_one:
            raise CodeError("not a repetition code")
        self.code = code

    def decode(self, y, ctr):
        n = y.shape[1]
        ctr.add("repetition", signs=1, additions=n - 1)
        s = np.where(np.sum(y, axis=1) < 0, -1.0, 1.0)
        return np.repeat(s[:, None], n, axis=1), np.ones(y.shape[0], dtype=bool)

    def list_decode(self, y, L, ctr):
        x, ok = self.decode(y, ctr)
        if L == 1:
            return x[:, None], np.sum(x * y, axis=1)[:, None], ok[:, None]
        phi = np.sum(x * y, axis=1)
        return np.stack([x, -x], axis=1), np.stack([phi, -phi], axis=1), np.ones((y.shape[0], 2), dtype=bool)


class ParityDecoder(Decoder):
    """Hard decision, then flip the least reliable bit if the weight is odd."""

    name = "parity"

    def __init__(self, code):
        if code.k != code.n - 1 or any(r.bit_count() % 2 for r in code.rows):
            raise CodeError("not a single-parity-check code")
        self.code = code

    def decode(self, y, ctr):
        n = y.shape[1]
        ctr.add("parity", signs=n, comparisons=n - 1)
        return _kernels.parity_ml(y), np.ones(y.shape[0], dtype=bool)

    def list_decode(self, y, L, ctr):
        if L == 1:
            return super().list_decode(y, L, ctr)
        n = y.shape[1]
        ctr.add("parity", signs=n, comparisons=n - 1)
        return _flip_list(y, L, 0, ctr, "parity")


class CorrelationDecoder(Decoder):
    """Maximise the correlation over an enumerated code.

    If the all-one word is in the code only the half ``C-`` (codewords with a
    0 in position 0) is searched and ``|corr|`` decides; the sign of the
    winning correlation fixes the complement.
    """

    name = "correlation"

    def __init__(self, code):
        self.code = code
        X = code.modulated
        self.full = X
        self.half = X[X[:, 0] > 0] if code.contains_all_one else None

    def _chunks(self, R, M):
        step = max(1, _CELL_BUDGET // max(M, 1))
        return range(0, R, step), step

    def decode(self, y, ctr):
        R, n = y.shape
        C = self.half if self.half is not None else self.full
        M = C.shape[0]
        ctr.add("correlation-ml", signs=M * n, additions=M * (n - 1), comparisons=M - 1)
        out = np.empty((R, n))
        starts, step = self._chunks(R, M)
        for s in starts:
            corr = y[s : s + step] @ C.T
            if self.half is not None:
                idx, sgn = _kernels.abs_argmax(corr)
                out[s : s + step] = C[idx] * sgn[:, None]
            else:
                out[s : s + step] = C[np.argmax(corr, axis=1)]
        return out, np.ones(R, dtype=bool)

    def list_decode(self, y, L, ctr):
        R, n = y.shape
        C = self.full
        M = C.shape[0]
        L = min(L, M)
        Mc = self.half.shape[0] if self.half is not None else M
        ctr.add("correlation-list", signs=Mc * n, additions=Mc * (n - 1), comparisons=selection_comparisons(M, L))
        X = np.empty((R, L, n))
        cs = np.empty((R, L))
        starts, step = self._chunks(R, M)
        for s in starts:
            corr = y[s : s + step] @ C.T
            idx = _kernels.topk(corr, L)
            X[s : s + step] = C[idx]
            cs[s : s + step] = np.take_along_axis(corr, idx, axis=1)
        return X, cs, np.ones((R, L), dtype=bool)


def _half_set(code: LinearCode) -> np.ndarray:
    X = code.modulated
    return X[X[:, 0] > 0]


class PlotkinRepetitionDecoder(Decoder):
    """ML for P[c0 | repetition] with the all-one word in c0 (first simplex lemma).

    For each x_d in c0's half set, the best codeword with first half ±x_d has
    correlation |Φ(x_d, y0)| + |Φ(x_d, y1)|.
    """

    name = "simplex-ML-I"

    def __init__(self, code):
        if not code.plotkin_parts:
            raise CodeError("needs a Plotkin code")
        c0, c1 = code.plotkin_parts
        if c1.k != 1 or not c1.contains_all_one or not c0.contains_all_one:
            raise CodeError("needs P[c0 | repetition] with the all-one word in c0")
        self.code = code
        self.h = c0.n
        self.Xd = _half_set(c0)

    def _scores(self, y, ctr):
        h, M = self.h, self.Xd.shape[0]
        ctr.add("simplex-ML-I", signs=2 * h * M, additions=(2 * (h - 1) + 1) * M)
        a = y[:, :h] @ self.Xd.T
        b = y[:, h:] @ self.Xd.T
        return a, b, np.abs(a) + np.abs(b)

    def _words(self, idx, a, b):
        x0 = self.Xd[idx] * np.where(a < 0, -1.0, 1.0)[..., None]
        rep = np.where((a < 0) == (b < 0), 1.0, -1.0)[..., None]
        return np.concatenate([x0, x0 * rep], axis=-1)

    def decode(self, y, ctr):
        a, b, score = self._scores(y, ctr)
        ctr.add("select", comparisons=score.shape[1] - 1)
        idx = np.argmax(score, axis=1)
        r = np.arange(y.shape[0])
        return self._words(idx, a[r, idx], b[r, idx]), np.ones(y.shape[0], dtype=bool)

    # sign patterns (t0, t1) relative to the best one: correlation t0|a| + t1|b|
    PATTERNS = ((1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0))

    def list_decode(self, y, L, ctr):
        a, b, _ = self._scores(y, ctr)
        R, M = a.shape
        sa, sb = np.where(a < 0, -1.0, 1.0), np.where(b < 0, -1.0, 1.0)
        scores = np.concatenate([t0 * np.abs(a) + t1 * np.abs(b) for t0, t1 in self.PATTERNS], axis=1)
        L = min(L, 4 * M)
        ctr.add("list", additions=3 * M)
        ctr.add("select", comparisons=selection_comparisons(4 * M, L))
        idx = _kernels.topk(scores, L)
        pat, d = np.divmod(idx, M)
        t = np.array(self.PATTERNS)
        r = np.arange(R)[:, None]
        s0 = sa[r, d] * t[pat, 0]
        s1 = sb[r, d] * t[pat, 1]
        x0 = self.Xd[d] * s0[..., None]
        X = np.concatenate([x0, self.Xd[d] * s1[..., None]], axis=-1)
        return X, np.take_along_axis(scores, idx, axis=1), np.ones((R, L), dtype=bool)


def _is_double_simplex(code: LinearCode) -> bool:
    dp = code.double
    if dp is None:
        return False
    rep = dp.c1.k == 1 and dp.c1.contains_all_one and dp.c2 == dp.c1
    return rep and dp.c3.k == 0 and dp.c0.contains_all_one


class DoubleSimplexDecoder(Decoder):
    """ML via the four add-four vectors y0 ± y1 ± y2 ± y3 (second simplex lemma).

    With C1 = C2 = repetition and C3 = {0}, every codeword is
    |x0|s1 x0|s2 x0|s1 s2 x0|; for each sign pair an ML decision for C0 on the
    add-four vector is the best candidate, and its correlation is sum x0*w.
    C0 is decoded by this same lemma when it has the structure, else by
    ``inner`` (default: the closed-form choice for C0).
    """

    name = "simplex-ML-II"
    SIGNS = ((1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0))

    def __init__(self, code, inner: Decoder | None = None):
        if not _is_double_simplex(code):
            raise CodeError("needs the double-Plotkin simplex structure")
        self.code = code
        c0 = code.double.c0
        if inner is None:
            if c0.n >= 2 and _is_double_simplex(c0):
                inner = DoubleSimplexDecoder(c0)
            else:
                from .strategy import auto_choice, build_leaf

                inner = build_leaf(c0, auto_choice(c0))
        self.inner = inner

    def _candidates(self, y, ctr):
        n = self.code.double.n
        y0, y1, y2, y3 = (y[:, i * n : (i + 1) * n] for i in range(4))
        xs, cs = [], []
        for s1, s2 in self.SIGNS:
            ctr.add("add-four", signs=3 * n, additions=3 * n)
            w = y0 + s1 * y1 + s2 * y2 + (s1 * s2) * y3
            with ctr.section("C0"):
                x0, _ = self.inner.decode(w, ctr)
            ctr.add("correlation", signs=n, additions=n - 1)
            cs.append(np.sum(x0 * w, axis=1))
            xs.append(np.concatenate([x0, s1 * x0, s2 * x0, (s1 * s2) * x0], axis=1))
        return np.stack(xs, axis=1), np.stack(cs, axis=1)

    def decode(self, y, ctr):
        X, C = self._candidates(y, ctr)
        ctr.add("select", comparisons=4)
        idx = np.argmax(C, axis=1)
        return X[np.arange(y.shape[0]), idx], np.ones(y.shape[0], dtype=bool)

    def list_decode(self, y, L, ctr):
        """Top-L list: the inner top-L for each sign pair, merged."""
        n = self.code.double.n
        y0, y1, y2, y3 = (y[:, i * n : (i + 1) * n] for i in range(4))
        xs, cs = [], []
        for s1, s2 in self.SIGNS:
            ctr.add("add-four", signs=3 * n, additions=3 * n)
            w = y0 + s1 * y1 + s2 * y2 + (s1 * s2) * y3
            with ctr.section("C0"):
                x0, c0, _ = self.inner.list_decode(w, L, ctr)
            xs.append(np.concatenate([x0, s1 * x0, s2 * x0, (s1 * s2) * x0], axis=-1))
            cs.append(c0)
        X, C = np.concatenate(xs, axis=1), np.concatenate(cs, axis=1)
        L = min(L, C.shape[1])
        ctr.add("select", comparisons=selection_comparisons(C.shape[1], L))
        return _sorted_list(X, C, L)


def merge_order(L1: int, L2: int, L: int) -> list[tuple[int, int]]:
    """Rank pairs (i, j) shell by shell: (0,0), (0,1), (1,0), (1,1), (0,2), (2,0), ..."""
    out = []
    s = 0
    while len(out) < L and s < max(L1, L2):
        if s == 0:
            shell = [(0, 0)]
        else:
            shell = []
            for t in range(s):
                shell += [(t, s), (s, t)]
            shell.append((s, s))
        out += [(i, j) for i, j in shell if i < L1 and j < L2]
        s += 1
    return out[:L]


class ConcatDecoder(Decoder):
    """Direct sums |a|b|...|: parts are decoded independently (ML if each part is)."""

    name = "concatenated"

    def __init__(self, code, part_decoders):
        if not code.parts:
            raise CodeError("not a direct sum")
        self.code = code
        self.parts = list(part_decoders)
        self.offsets = np.cumsum([0] + [p.n for p in code.parts])

    def _slices(self, y):
        return [y[:, a:b] for a, b in zip(self.offsets[:-1], self.offsets[1:])]

    def decode(self, y, ctr):
        xs, oks = [], []
        for i, (dec, ys) in enumerate(zip(self.parts, self._slices(y))):
            with ctr.section(f"part{i}"):
                x, ok = dec.decode(ys, ctr)
            xs.append(x)
            oks.append(ok)
        return np.concatenate(xs, axis=1), np.logical_and.reduce(oks)

    def list_decode(self, y, L, ctr):
        ys = self._slices(y)
        with ctr.section("part0"):
            X, C, OK = self.parts[0].list_decode(ys[0], L, ctr)
        for i in range(1, len(self.parts)):
            with ctr.section(f"part{i}"):
                X2, C2, OK2 = self.parts[i].list_decode(ys[i], L, ctr)
            pairs = merge_order(X.shape[1], X2.shape[1], L)
            a = [p[0] for p in pairs]
            b = [p[1] for p in pairs]
            ctr.add("merge", additions=len(pairs))
            X = np.concatenate([X[:, a], X2[:, b]], axis=2)
            C = C[:, a] + C2[:, b]
            OK = OK[:, a] & OK2[:, b]
        return X, C, OK
