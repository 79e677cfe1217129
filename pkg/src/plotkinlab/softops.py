"""Join/add algebra on soft blocks with operation counting.

All operations act on the last axis, so a batch of received words (shape
``(trials, n)``) is processed in one call.  Counts are charged *per word*: a
batched call adds the cost of one word, multiplied by the counter's current
scale (the number of parallel continuations each word is carrying).

Composite operations charge the cost formulas of the join/add complexity
table, which already include the sign flips by known codewords.
"""

from __future__ import annotations

from collections import defaultdict
from contextlib import contextmanager
from typing import NamedTuple

import numpy as np

from . import _kernels

JOIN_ADD_KINDS = ("join-two", "join-four", "join-many", "join-add", "add-join", "add-two", "add-four")


class OpCounter:
    """Signs, comparisons and additions, with a per-path breakdown."""

    def __init__(self):
        self.signs = 0
        self.comparisons = 0
        self.additions = 0
        self.entries: dict[tuple, list[int]] = defaultdict(lambda: [0, 0, 0])
        self._scale = 1
        self._path: tuple = ()

    def add(self, kind: str, signs: int = 0, comparisons: int = 0, additions: int = 0):
        s = self._scale
        self.signs += signs * s
        self.comparisons += comparisons * s
        self.additions += additions * s
        e = self.entries[self._path + (kind,)]
        e[0] += signs * s
        e[1] += comparisons * s
        e[2] += additions * s

    def ac_ops(self) -> int:
        return self.comparisons + self.additions

    def totals(self):
        return (self.signs, self.comparisons, self.additions)

    def reset(self):
        self.__init__()

    @contextmanager
    def section(self, name: str):
        old = self._path
        self._path = old + (name,)
        try:
            yield self
        finally:
            self._path = old

    @contextmanager
    def scaled(self, k: int):
        old = self._scale
        self._scale = old * int(k)
        try:
            yield self
        finally:
            self._scale = old

    def breakdown(self, prefix: tuple = (), depth: int = 1) -> dict[tuple, list[int]]:
        """Aggregate entries under ``prefix`` by the next ``depth`` path elements."""
        out: dict[tuple, list[int]] = defaultdict(lambda: [0, 0, 0])
        p = len(prefix)
        for key, (s, c, a) in self.entries.items():
            if key[:p] != prefix or len(key) <= p:
                continue
            e = out[key[p : p + depth]]
            e[0] += s
            e[1] += c
            e[2] += a
        return dict(out)


class _NullCounter(OpCounter):
    def add(self, kind, signs=0, comparisons=0, additions=0):
        pass


def null_counter() -> OpCounter:
    return _NullCounter()


class Blocks4(NamedTuple):
    y0: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    y3: np.ndarray


def split_blocks(y: np.ndarray) -> Blocks4:
    N = y.shape[-1]
    if N % 4:
        raise ValueError("length must be a multiple of 4")
    n = N // 4
    return Blocks4(*(y[..., i * n : (i + 1) * n] for i in range(4)))


def _check(*arrays):
    n = arrays[0].shape[-1]
    if any(a.shape[-1] != n for a in arrays):
        raise ValueError("length mismatch")
    return n


def join(a, b, ctr: OpCounter) -> np.ndarray:
    """sign(a*b) * min(|a|, |b|), elementwise, with sign(0) = +1."""
    n = _check(a, b)
    ctr.add("join-two", signs=n, comparisons=n)
    return _kernels.join2(a, b)


def join_many(blocks, ctr: OpCounter) -> np.ndarray:
    if len(blocks) < 2:
        raise ValueError("need at least two blocks")
    n = _check(*blocks)
    m = len(blocks) - 1
    ctr.add("join-four" if m == 3 else ("join-two" if m == 1 else "join-many"), signs=m * n, comparisons=m * n)
    out = blocks[0]
    for b in blocks[1:]:
        out = _kernels.join2(out, b)
    return out


def scale_by_codeword(y, x, ctr: OpCounter) -> np.ndarray:
    n = _check(y, x)
    ctr.add("scale", signs=n)
    return y * x


def add_blocks(blocks, ctr: OpCounter) -> np.ndarray:
    if len(blocks) < 2:
        raise ValueError("need at least two blocks")
    n = _check(*blocks)
    ctr.add("add", additions=(len(blocks) - 1) * n)
    out = blocks[0]
    for b in blocks[1:]:
        out = out + b
    return out


# Composite forms.  Operands are passed already multiplied by known words.


def join_add_terms(a, b, c, d, ctr: OpCounter) -> np.ndarray:
    """(a join b) + (c join d)."""
    n = _check(a, b, c, d)
    ctr.add("join-add", signs=2 * n, comparisons=2 * n, additions=n)
    return _kernels.join2(a, b) + _kernels.join2(c, d)


def add_join_terms(a, b, c, d, ctr: OpCounter) -> np.ndarray:
    """(a + b) join (c + d)."""
    n = _check(a, b, c, d)
    ctr.add("add-join", signs=n, comparisons=n, additions=2 * n)
    return _kernels.join2(a + b, c + d)


def add_two(y0, y1, x1, ctr: OpCounter) -> np.ndarray:
    n = _check(y0, y1, x1)
    ctr.add("add-two", signs=n, additions=n)
    return y0 + y1 * x1


def join_add(b: Blocks4, known_x3, ctr: OpCounter) -> np.ndarray:
    """(y0 join y1) + (y2 join y3 x3): uncovers 2 x1."""
    return join_add_terms(b.y0, b.y1, b.y2, b.y3 * known_x3, ctr)


def add_join(b: Blocks4, known_x2, known_x3, ctr: OpCounter) -> np.ndarray:
    """(y0 + y2 x2) join (y1 + y3 x2 x3): uncovers x1."""
    return add_join_terms(b.y0, b.y2 * known_x2, b.y1, b.y3 * known_x2 * known_x3, ctr)


def add_four(b: Blocks4, x1, x2, x3, ctr: OpCounter) -> np.ndarray:
    """y0 + y1 x1 + y2 x2 + y3 x1 x2 x3: four noisy copies of x0."""
    n = _check(b.y0, x1, x2, x3)
    ctr.add("add-four", signs=3 * n, additions=3 * n)
    return b.y0 + b.y1 * x1 + b.y2 * x2 + b.y3 * (x1 * x2 * x3)


def correlation(x, y, ctr: OpCounter) -> np.ndarray:
    n = _check(x, y)
    ctr.add("correlation", signs=n, additions=n - 1)
    return np.sum(x * y, axis=-1)


def correlation_via_add_four(x0_hat, w, ctr: OpCounter) -> np.ndarray:
    """Full-length correlation recovered from the add-four vector: sum x0_i w_i."""
    n = _check(x0_hat, w)
    ctr.add("correlation", signs=n, additions=n - 1)
    return np.sum(x0_hat * w, axis=-1)
