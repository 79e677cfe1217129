"""Binary linear codes over GF(2): words, generator matrices, Plotkin composition.

Words are packed into Python integers (bit ``i`` is coordinate ``i``) so that
row reduction and membership tests are exact and cheap.  Batch-oriented code
paths use ``uint8`` matrices instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb

import numpy as np

ENUM_BOUND = 20
INF = math.inf


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryWord:
    value: int
    length: int

    def __post_init__(self):
        if self.length <= 0:
            raise CodeError("word length must be positive")
        if self.value < 0 or self.value >> self.length:
            raise CodeError("value does not fit in length")

    @classmethod
    def from_bits(cls, bits) -> BinaryWord:
        bits = [int(b) for b in bits]
        if any(b not in (0, 1) for b in bits):
            raise CodeError("bits must be 0/1")
        return cls(_pack(bits), len(bits))

    @classmethod
    def from_str(cls, s: str) -> BinaryWord:
        return cls.from_bits(s.replace(" ", ""))

    @classmethod
    def zeros(cls, n: int) -> BinaryWord:
        return cls(0, n)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.length))

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def to_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.uint8)

    def __len__(self):
        return self.length

    def __add__(self, other: BinaryWord) -> BinaryWord:
        if other.length != self.length:
            raise CodeError("length mismatch")
        return BinaryWord(self.value ^ other.value, self.length)

    def __str__(self):
        return "".join(map(str, self.bits))


def weight(w: BinaryWord) -> int:
    return w.weight


def distance(a: BinaryWord, b: BinaryWord) -> int:
    return (a + b).weight


def _pack(bits) -> int:
    v = 0
    for i, b in enumerate(bits):
        if b:
            v |= 1 << i
    return v


def _rref(rows, n):
    """Reduced row echelon form of packed rows; returns (rows, pivots)."""
    rows = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for col in range(n):
        bit = 1 << col
        sel = next((i for i, r in enumerate(rows) if r & bit), None)
        if sel is None:
            continue
        p = rows.pop(sel)
        rows = [r ^ p if r & bit else r for r in rows]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
        pivots.append(col)
        rows = [r for r in rows if r]
        if not rows:
            break
    return tuple(out), tuple(pivots)


def _reduce(word: int, rows, pivots) -> int:
    for r, p in zip(rows, pivots):
        if (word >> p) & 1:
            word ^= r
    return word


def _to_matrix(rows, n) -> np.ndarray:
    m = np.zeros((len(rows), n), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in range(n):
            m[i, j] = (r >> j) & 1
    return m


def _to_uint64(rows, n) -> np.ndarray:
    W = max(1, (n + 63) // 64)
    mask = (1 << 64) - 1
    return np.array([[(r >> (64 * w)) & mask for w in range(W)] for r in rows], dtype=np.uint64).reshape(
        len(rows), W
    )


class LinearCode:
    """A binary linear code with a canonical (RREF) generator.

    ``d_declared`` is the distance claimed by construction.  ``d_status`` is
    ``"declared"`` until :func:`verify_min_distance` or :func:`sample_weight_floor`
    runs.  The zero code has ``d_declared = inf`` so that composition formulas
    such as ``min(2*d0, d1)`` work unchanged.

    Optional structure hints used by decoders: ``parts`` (direct-sum pieces),
    ``plotkin_parts`` (``(c0, c1)``) and ``double`` (a :class:`DoublePlotkinCode`).
    """

    def __init__(self, rows, n: int, d_declared=None, label: str = "", *, parts=None, plotkin_parts=None):
        if n <= 0:
            raise CodeError("length must be positive")
        rows = [int(r) for r in rows]
        if any(r >> n for r in rows):
            raise CodeError("row wider than n")
        self.n = n
        self.rows, self.pivots = _rref(rows, n)
        self.k = len(self.rows)
        self.label = label or f"({n},{self.k})"
        if d_declared is None:
            d_declared = INF if self.k == 0 else None
        self.d_declared = d_declared
        self.d_status = "declared"
        self.parts = tuple(parts) if parts else None
        self.plotkin_parts = plotkin_parts
        self.double: DoublePlotkinCode | None = None

    @classmethod
    def from_matrix(cls, matrix, d_declared=None, label="", **kw) -> LinearCode:
        m = np.atleast_2d(np.asarray(matrix, dtype=np.uint8))
        n = m.shape[1]
        return cls([_pack(row) for row in m], n, d_declared, label, **kw)

    def __repr__(self):
        d = "?" if self.d_declared is None else ("inf" if self.d_declared == INF else int(self.d_declared))
        return f"LinearCode{(self.n, self.k)}[d={d}] {self.label}"

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    @property
    def params(self):
        return (self.n, self.k, self.d_declared)

    @cached_property
    def generator(self) -> np.ndarray:
        return _to_matrix(self.rows, self.n)

    @cached_property
    def parity_check(self) -> np.ndarray:
        """(n-k) x n matrix H with G H^T = 0."""
        piv = set(self.pivots)
        out = []
        for j in range(self.n):
            if j in piv:
                continue
            h = 1 << j
            for r, p in zip(self.rows, self.pivots):
                if (r >> j) & 1:
                    h |= 1 << p
            out.append(h)
        return _to_matrix(out, self.n)

    @cached_property
    def contains_all_one(self) -> bool:
        return self.contains((1 << self.n) - 1)

    def contains(self, word: int) -> bool:
        return _reduce(word, self.rows, self.pivots) == 0

    def syndromes(self, bits: np.ndarray) -> np.ndarray:
        """Syndromes of a batch of 0/1 words, shape (..., n-k)."""
        H = self.parity_check
        if H.shape[0] == 0:
            return np.zeros(bits.shape[:-1] + (0,), dtype=np.uint8)
        return ((bits.astype(np.int32) @ H.T.astype(np.int32)) & 1).astype(np.uint8)

    def contains_batch(self, bits: np.ndarray) -> np.ndarray:
        return ~np.any(self.syndromes(bits), axis=-1)

    def contains_modulated(self, x: np.ndarray) -> np.ndarray:
        return self.contains_batch((x < 0).astype(np.uint8))

    def encode_batch(self, info: np.ndarray) -> np.ndarray:
        info = np.asarray(info, dtype=np.int32)
        if info.shape[-1] != self.k:
            raise CodeError("info length mismatch")
        if self.k == 0:
            return np.zeros(info.shape[:-1] + (self.n,), dtype=np.uint8)
        return ((info @ self.generator.astype(np.int32)) & 1).astype(np.uint8)

    @cached_property
    def codewords(self) -> np.ndarray:
        """All 2^k codewords as a uint8 matrix; row i encodes the binary expansion of i."""
        _check_enum(self.k)
        i = np.arange(1 << self.k, dtype=np.int64)
        info = ((i[:, None] >> np.arange(self.k)) & 1).astype(np.int32)
        return self.encode_batch(info)

    @cached_property
    def modulated(self) -> np.ndarray:
        return 1.0 - 2.0 * self.codewords.astype(np.float64)


def _check_enum(k, bound=ENUM_BOUND):
    if k > bound:
        raise CodeError(f"dimension {k} exceeds the enumeration bound {bound}")


# --- simple families -------------------------------------------------------


def zero_code(n: int) -> LinearCode:
    return LinearCode([], n, INF, f"zero({n})")


def full_code(n: int) -> LinearCode:
    return LinearCode([1 << i for i in range(n)], n, 1, f"full({n})")


def repetition_code(n: int) -> LinearCode:
    return LinearCode([(1 << n) - 1], n, n, f"rep({n})")


def parity_code(n: int) -> LinearCode:
    if n == 1:
        return zero_code(1)
    return LinearCode([1 | (1 << i) for i in range(1, n)], n, 2, f"spc({n})")


def dual_code(code: LinearCode, label: str = "") -> LinearCode:
    H = code.parity_check
    return LinearCode([_pack(r) for r in H], code.n, None, label or f"dual[{code.label}]")


# --- word-level API --------------------------------------------------------


def _as_word(w, n) -> int:
    if isinstance(w, BinaryWord):
        if w.length != n:
            raise CodeError("length mismatch")
        return w.value
    arr = np.asarray(w).ravel()
    if arr.size != n:
        raise CodeError("length mismatch")
    return _pack(arr)


def encode(code: LinearCode, info) -> BinaryWord:
    if isinstance(info, BinaryWord):
        bits = info.bits
    else:
        bits = [int(b) for b in np.asarray(info).ravel()]
    if len(bits) != code.k:
        raise CodeError("info length mismatch")
    v = 0
    for b, r in zip(bits, code.rows):
        if b:
            v ^= r
    return BinaryWord(v, code.n)


def is_codeword(code: LinearCode, w) -> bool:
    return code.contains(_as_word(w, code.n))


def is_subcode(a: LinearCode, b: LinearCode) -> bool:
    if a.n != b.n:
        raise CodeError("length mismatch")
    return all(b.contains(r) for r in a.rows)


# --- composition ------------------------------------------------------------


def plotkin(c0: LinearCode, c1: LinearCode, label: str = "") -> LinearCode:
    """The code {|u0|u0+u1| : u0 in c0, u1 in c1}."""
    if c0.n != c1.n:
        raise CodeError("length mismatch")
    n = c0.n
    rows = [r | (r << n) for r in c0.rows] + [r << n for r in c1.rows]
    d = min(2 * c0.d_declared, c1.d_declared) if None not in (c0.d_declared, c1.d_declared) else None
    code = LinearCode(rows, 2 * n, d, label or f"P[{c0.label}|{c1.label}]", plotkin_parts=(c0, c1))
    return code


def direct_sum(*codes: LinearCode, label: str = "") -> LinearCode:
    """Concatenation |a|b|...| with independent codewords in each part."""
    rows, off = [], 0
    for c in codes:
        rows += [r << off for r in c.rows]
        off += c.n
    ds = [c.d_declared for c in codes]
    d = None if None in ds else min(ds)
    return LinearCode(rows, off, d, label or "|" + "|".join(c.label for c in codes) + "|", parts=codes)


@dataclass(eq=False)
class DoublePlotkinCode:
    """Four nested components combined as |u0|u0+u1|u0+u2|u0+u1+u2+u3|."""

    c0: LinearCode
    c1: LinearCode
    c2: LinearCode
    c3: LinearCode
    composite: LinearCode
    relations: dict = field(default_factory=dict)

    @property
    def comps(self):
        return (self.c0, self.c1, self.c2, self.c3)

    @property
    def n(self):
        return self.c0.n

    def encode(self, info) -> BinaryWord:
        """Encode with info = info0 || info1 || info2 || info3 (component order)."""
        bits = info.bits if isinstance(info, BinaryWord) else tuple(int(b) for b in np.asarray(info).ravel())
        if len(bits) != self.composite.k:
            raise CodeError("info length mismatch")
        us, off = [], 0
        for c in self.comps:
            us.append(encode(c, bits[off : off + c.k]).value)
            off += c.k
        u0, u1, u2, u3 = us
        n = self.n
        v = u0 | ((u0 ^ u1) << n) | ((u0 ^ u2) << 2 * n) | ((u0 ^ u1 ^ u2 ^ u3) << 3 * n)
        return BinaryWord(v, 4 * n)

    def contains_blocks(self, a0: int, a1: int, a2: int, a3: int) -> bool:
        return (
            self.c0.contains(a0)
            and self.c1.contains(a0 ^ a1)
            and self.c2.contains(a0 ^ a2)
            and self.c3.contains(a0 ^ a1 ^ a2 ^ a3)
        )

    def split(self, word: int):
        n, mask = self.n, (1 << self.n) - 1
        return tuple((word >> (i * n)) & mask for i in range(4))


def _relations(c0, c1, c2, c3):
    return {
        "C3<C2": is_subcode(c3, c2) and c3.k < c2.k,
        "C3<=C2": is_subcode(c3, c2),
        "C2<=C1": is_subcode(c2, c1),
        "C1<C0": is_subcode(c1, c0) and c1.k < c0.k,
        "C1<=C0": is_subcode(c1, c0),
        "C3<=C1": is_subcode(c3, c1),
    }


def double_plotkin(c0, c1, c2, c3, label: str = "", composite: LinearCode | None = None) -> DoublePlotkinCode:
    if not (c0.n == c1.n == c2.n == c3.n):
        raise CodeError("length mismatch")
    built = plotkin(plotkin(c0, c1), plotkin(c2, c3), label=label)
    if composite is None:
        composite = built
    elif composite != built:
        raise CodeError("composite does not match the components")
    dp = DoublePlotkinCode(c0, c1, c2, c3, composite, _relations(c0, c1, c2, c3))
    composite.double = dp
    return dp


# --- Reed-Muller ------------------------------------------------------------


def rm_dimension(r: int, m: int) -> int:
    return sum(comb(m, i) for i in range(min(r, m) + 1)) if r >= 0 else 0


@lru_cache(maxsize=None)
def _rm(r: int, m: int) -> LinearCode:
    n = 1 << m
    if r < 0:
        code = zero_code(n)
    elif r >= m:
        code = full_code(n)
    elif r == 0:
        code = repetition_code(n)
    else:
        code = plotkin(_rm(r, m - 1), _rm(r - 1, m - 1))
    code.label = f"R({r},{m})" if 0 <= r <= m else code.label
    if 0 <= r <= m and m >= 2:
        double_plotkin(_rm(r, m - 2), _rm(r - 1, m - 2), _rm(r - 1, m - 2), _rm(r - 2, m - 2), composite=code)
    return code


def rm_code(r: int, m: int) -> LinearCode:
    """Reed-Muller code R(r, m) built by the recursion R(r,m) = P[R(r,m-1) | R(r-1,m-1)]."""
    if m < 0 or r < 0 or r > m:
        raise CodeError(f"R({r},{m}) requires 0 <= r <= m")
    return _rm(r, m)


# --- distances -------------------------------------------------------------


def _span_packed(code: LinearCode) -> np.ndarray:
    words = np.zeros((1, max(1, (code.n + 63) // 64)), dtype=np.uint64)
    for g in _to_uint64(code.rows, code.n):
        words = np.concatenate([words, words ^ g], axis=0)
    return words


def weight_distribution(code: LinearCode, bound: int = ENUM_BOUND) -> list[int]:
    _check_enum(code.k, bound)
    w = np.bitwise_count(_span_packed(code)).sum(axis=1)
    return np.bincount(w, minlength=code.n + 1).tolist()


def _krawtchouk(i, j, n):
    return sum((-1) ** s * comb(j, s) * comb(n - j, i - s) for s in range(0, i + 1))


def _macwilliams_min(code: LinearCode, bound: int) -> int:
    dual = dual_code(code)
    B = weight_distribution(dual, bound)
    size = 1 << dual.k
    for i in range(1, code.n + 1):
        a = sum(bj * _krawtchouk(i, j, code.n) for j, bj in enumerate(B) if bj)
        if a:
            assert a % size == 0
            return i
    return INF


def exact_min_distance(code: LinearCode, bound: int = ENUM_BOUND) -> int:
    """Exact minimum distance by enumeration of the code, its dual (MacWilliams
    identities) or the direct-sum parts, whichever fits the bound."""
    if code.k == 0:
        return INF
    if code.k <= bound:
        wd = weight_distribution(code, bound)
        return next(i for i in range(1, code.n + 1) if wd[i])
    if code.n - code.k <= bound:
        return _macwilliams_min(code, bound)
    if code.parts:
        return min(exact_min_distance(p, bound) for p in code.parts)
    raise CodeError(f"{code.label}: neither k={code.k} nor n-k={code.n - code.k} within bound {bound}")


def verify_min_distance(code: LinearCode, bound: int = ENUM_BOUND) -> int:
    """Exhaustive minimum distance; sets ``d_declared`` and marks it verified."""
    d = exact_min_distance(code, bound)
    if code.d_declared not in (None, d):
        raise CodeError(f"{code.label}: declared d={code.d_declared} but exhaustive d={d}")
    code.d_declared = d
    code.d_status = "exhaustive"
    return d


def sample_weight_floor(code: LinearCode, samples: int = 100_000, seed: int = 0, batch: int = 20_000) -> int:
    """Smallest weight among random nonzero codewords (a floor on d's evidence, not a proof)."""
    if code.k == 0:
        return INF
    rng = np.random.default_rng(seed)
    best = code.n
    G = _to_uint64(code.rows, code.n)
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        info = rng.integers(0, 2, size=(m, code.k), dtype=np.uint8).astype(bool)
        info[~info.any(axis=1), 0] = True
        acc = np.zeros((m, G.shape[1]), dtype=np.uint64)
        for j in range(code.k):
            acc[info[:, j]] ^= G[j]
        best = min(best, int(np.bitwise_count(acc).sum(axis=1).min()))
        done += m
    if code.d_status == "declared":
        code.d_status = "sampled"
    return best
