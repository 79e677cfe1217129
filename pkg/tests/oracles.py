"""Brute-force references used to derive expected values.

Nothing here imports the package's encoders or decoders: codewords come
from spanning generator rows given as plain 0/1 lists.
"""

from __future__ import annotations

from itertools import product

import numpy as np


def span(rows: list[list[int]]) -> np.ndarray:
    """All GF(2) combinations of ``rows`` (duplicates removed, sorted)."""
    rows = np.array(rows, dtype=np.uint8).reshape(len(rows), -1)
    if rows.shape[0] == 0:
        raise ValueError("empty generator")
    words = {tuple(np.bitwise_xor.reduce(rows[np.array(c, bool)], axis=0)) if any(c) else (0,) * rows.shape[1]
             for c in product((0, 1), repeat=rows.shape[0])}
    return np.array(sorted(words), dtype=np.uint8)


def rm_generator(r: int, m: int) -> list[list[int]]:
    """Evaluation vectors of all monomials of degree <= r in m variables.

    Position p corresponds to the point whose coordinates are the bits of p,
    the convention under which |u|u+v| with u in R(r,m-1), v in R(r-1,m-1)
    generates the same code.
    """
    pts = [[(p >> i) & 1 for i in range(m)] for p in range(1 << m)]
    rows = []
    for deg in range(r + 1):
        for mono in _subsets(m, deg):
            rows.append([int(all(pt[i] for i in mono)) for pt in pts])
    return rows


def _subsets(m, k):
    from itertools import combinations

    return list(combinations(range(m), k))


def min_distance(words: np.ndarray) -> int:
    w = words.sum(axis=1)
    return int(w[w > 0].min())


def ml_decode(words: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Max-correlation codeword per row of y (lowest index on ties) and its correlation."""
    X = 1.0 - 2.0 * words.astype(float)
    corr = y @ X.T
    idx = np.argmax(corr, axis=1)
    return X[idx], corr[np.arange(len(y)), idx]


def in_span(words: np.ndarray, w: np.ndarray) -> bool:
    return bool(np.any(np.all(words == w, axis=1)))


def plotkin_words(w0: np.ndarray, w1: np.ndarray) -> np.ndarray:
    return np.array([np.concatenate([a, a ^ b]) for a in w0 for b in w1], dtype=np.uint8)


def double_plotkin_words(w0, w1, w2, w3) -> np.ndarray:
    out = []
    for a in w0:
        for b in w1:
            for c in w2:
                for d in w3:
                    out.append(np.concatenate([a, a ^ b, a ^ c, a ^ b ^ c ^ d]))
    return np.unique(np.array(out, dtype=np.uint8), axis=0)


def parity_words(n: int) -> np.ndarray:
    return np.array([w for w in product((0, 1), repeat=n) if sum(w) % 2 == 0], dtype=np.uint8)


# Labels (u3 u2 u1 u0, most significant first) of the 16 leaves of the
# partition tree of B(4,4,1) and the vectors attached to them.
GCC_LEAVES = [
    "0000", "1111", "0101", "1010", "0011", "1100", "0110", "1001",
    "0001", "1110", "0100", "1011", "0010", "1101", "0111", "1000",
]
