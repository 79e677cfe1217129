"""numba versions of the hot kernels; semantics match ``_numpy`` exactly."""

import numpy as np
from numba import njit


@njit(cache=True)
def _join2_2d(a, b, out):
    R, n = a.shape
    for r in range(R):
        for i in range(n):
            u = a[r, i]
            v = b[r, i]
            m = min(abs(u), abs(v))
            out[r, i] = -m if (u < 0) != (v < 0) else m


def join2(a, b):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
    shape = a.shape
    a2 = np.ascontiguousarray(a).reshape(-1, shape[-1])
    b2 = np.ascontiguousarray(b).reshape(-1, shape[-1])
    out = np.empty_like(a2)
    _join2_2d(a2, b2, out)
    return out.reshape(shape)


@njit(cache=True)
def _parity_ml(y, x):
    R, n = y.shape
    for r in range(R):
        neg = 0
        best = 0
        bestv = np.inf
        for i in range(n):
            v = y[r, i]
            if v < 0:
                neg += 1
                x[r, i] = -1.0
            else:
                x[r, i] = 1.0
            if abs(v) < bestv:
                bestv = abs(v)
                best = i
        if neg % 2 == 1:
            x[r, best] = -x[r, best]


def parity_ml(y):
    y = np.ascontiguousarray(y, dtype=np.float64)
    x = np.empty_like(y)
    _parity_ml(y, x)
    return x


@njit(cache=True)
def _topk(scores, L, out):
    R, M = scores.shape
    taken = np.zeros(M, dtype=np.bool_)
    for r in range(R):
        taken[:] = False
        for t in range(L):
            best = -1
            for j in range(M):
                if taken[j]:
                    continue
                if best < 0 or scores[r, j] > scores[r, best]:
                    best = j
            taken[best] = True
            out[r, t] = best


def topk(scores, L):
    scores = np.ascontiguousarray(scores, dtype=np.float64)
    out = np.empty((scores.shape[0], L), dtype=np.int64)
    _topk(scores, L, out)
    return out


@njit(cache=True)
def _abs_argmax(corr, idx, sgn):
    R, M = corr.shape
    for r in range(R):
        best = 0
        bestv = abs(corr[r, 0])
        for j in range(1, M):
            v = abs(corr[r, j])
            if v > bestv:
                bestv = v
                best = j
        idx[r] = best
        sgn[r] = -1.0 if corr[r, best] < 0 else 1.0


def abs_argmax(corr):
    corr = np.ascontiguousarray(corr, dtype=np.float64)
    idx = np.empty(corr.shape[0], dtype=np.int64)
    sgn = np.empty(corr.shape[0], dtype=np.float64)
    _abs_argmax(corr, idx, sgn)
    return idx, sgn
