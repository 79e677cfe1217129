"""Vectorised numpy implementations of the hot kernels."""

import numpy as np


def join2(a, b):
    neg = (a < 0) != (b < 0)
    m = np.minimum(np.abs(a), np.abs(b))
    return np.where(neg, -m, m)


def parity_ml(y):
    x = np.where(y < 0, -1.0, 1.0)
    odd = (np.count_nonzero(y < 0, axis=-1) % 2) == 1
    if np.any(odd):
        rows = np.nonzero(odd)[0]
        pos = np.argmin(np.abs(y[rows]), axis=-1)
        x[rows, pos] = -x[rows, pos]
    return x


def topk(scores, L):
    if L == 1:
        return np.argmax(scores, axis=1)[:, None]
    order = np.argsort(-scores, axis=1, kind="stable")
    return order[:, :L]


def abs_argmax(corr):
    idx = np.argmax(np.abs(corr), axis=1)
    val = np.take_along_axis(corr, idx[:, None], axis=1)[:, 0]
    return idx, np.where(val < 0, -1.0, 1.0)
