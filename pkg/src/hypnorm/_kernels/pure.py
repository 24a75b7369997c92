"""Pure-Python kernel backend.

Same contract as the compiled backend `hypnorm._kernels._ck`; see
`hypnorm._kernels` for the API description.  Group spec is
``("free", rank)`` or ``("zfp", (m1, m2, ...))``; words are syllable
tuples as in `hypnorm._wordops`.
"""

from __future__ import annotations

import numpy as np

from .. import _wordops as w

BACKEND_NAME = "pure"


def _ops(spec):
    kind, param = spec
    if kind == "free":
        r = int(param)
        return (
            w.free_mul,
            w.free_inv,
            w.free_len,
            lambda a: w.free_sphere_rank(r, a),
            lambda k: w.free_sphere_size(r, k),
        )
    if kind == "zfp":
        orders = tuple(int(m) for m in param)
        tables_holder = {}

        def rank(a):
            k = len(a)
            t = tables_holder.get(k)
            if t is None:
                t = w.zfp_tables(orders, k)
                tables_holder[k] = t
            return w.zfp_sphere_rank(orders, a, t)

        return (
            lambda a, b: w.zfp_mul(orders, a, b),
            lambda a: w.zfp_inv(orders, a),
            w.zfp_len,
            rank,
            lambda k: w.zfp_sphere_size(orders, k),
        )
    raise ValueError(f"unknown group spec kind {kind!r}")


def product_sphere_hits(spec, lefts, rights, target_len):
    """For every pair (i, j): w = lefts[i]*rights[j]; when len(w) == target_len,
    emit (i, j, sphere_rank(w)).  Emission order is row-major over (i, j).
    Returns three int64 arrays."""
    mul, _inv, length, rank, _size = _ops(spec)
    li, ri, rk = [], [], []
    target = int(target_len)
    for i, a in enumerate(lefts):
        for j, b in enumerate(rights):
            p = mul(a, b)
            if length(p) == target:
                li.append(i)
                ri.append(j)
                rk.append(rank(p))
    return (
        np.asarray(li, dtype=np.int64),
        np.asarray(ri, dtype=np.int64),
        np.asarray(rk, dtype=np.int64),
    )


def product_ball_hits(spec, lefts, rights, radius):
    """Like product_sphere_hits but for the ball: when len(w) <= radius, emit
    (i, j, ball_rank(w)) where ball_rank offsets sphere ranks by the sizes of
    the smaller spheres (matching sphere-by-sphere ball enumeration order)."""
    mul, _inv, length, rank, size = _ops(spec)
    radius = int(radius)
    offsets = np.zeros(radius + 1, dtype=np.int64)
    for k in range(1, radius + 1):
        offsets[k] = offsets[k - 1] + size(k - 1)
    li, ri, rk = [], [], []
    for i, a in enumerate(lefts):
        for j, b in enumerate(rights):
            p = mul(a, b)
            n = length(p)
            if n <= radius:
                li.append(i)
                ri.append(j)
                rk.append(offsets[n] + rank(p))
    return (
        np.asarray(li, dtype=np.int64),
        np.asarray(ri, dtype=np.int64),
        np.asarray(rk, dtype=np.int64),
    )


def distance_table(spec, words):
    """D[i, j] = len(words[i] * words[j]^-1), int32 square matrix."""
    mul, inv, length, _rank, _size = _ops(spec)
    n = len(words)
    inverses = [inv(a) for a in words]
    out = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(words):
        row = out[i]
        for j in range(n):
            row[j] = length(mul(a, inverses[j]))
    return out


def left_quotient_lengths(spec, words, y):
    """lengths[i] = len(words[i]^-1 * y), int32 vector."""
    mul, inv, length, _rank, _size = _ops(spec)
    out = np.zeros(len(words), dtype=np.int32)
    for i, a in enumerate(words):
        out[i] = length(mul(inv(a), y))
    return out


def sphere_rank(spec, word):
    """Short-lex rank of `word` inside its own sphere (test hook)."""
    _mul, _inv, _length, rank, _size = _ops(spec)
    return int(rank(word))
