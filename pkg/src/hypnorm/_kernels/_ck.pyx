# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Mirrors hypnorm._kernels.pure exactly (same functions, same outputs, same
emission order); see hypnorm._kernels for the API contract.  Words are
packed into flat int32 (generator, exponent) pairs and all pair loops run
in C.
"""

import numpy as np

BACKEND_NAME = "compiled"

ctypedef long long i64


# -- packing ----------------------------------------------------------------

def _pack(words):
    """Pack a list of syllable tuples into (data, offsets) int32/int64 arrays."""
    cdef i64 n = len(words)
    cdef i64 total = 0
    for wd in words:
        total += len(wd)
    data = np.empty(2 * total, dtype=np.int32)
    offs = np.empty(n + 1, dtype=np.int64)
    cdef int[::1] dv = data
    cdef i64[::1] ov = offs
    cdef i64 pos = 0
    cdef i64 i = 0
    cdef int g, e
    for wd in words:
        ov[i] = pos
        for g, e in wd:
            dv[2 * pos] = g
            dv[2 * pos + 1] = e
            pos += 1
        i += 1
    ov[n] = pos
    return data, offs


cdef class _GroupOps:
    """Group parameters plus scratch knowledge for the C loops."""
    cdef int kind          # 0 = free, 1 = zfp
    cdef int rank          # free only
    cdef int nf            # zfp only: number of factors
    cdef int[::1] orders   # zfp only

    def __init__(self, spec):
        kind, param = spec
        if kind == "free":
            self.kind = 0
            self.rank = int(param)
            self.nf = 0
            self.orders = np.zeros(1, dtype=np.int32)
        elif kind == "zfp":
            self.kind = 1
            self.rank = 0
            arr = np.asarray([int(m) for m in param], dtype=np.int32)
            self.orders = arr
            self.nf = arr.shape[0]
        else:
            raise ValueError(f"unknown group spec kind {kind!r}")

    # multiply words a (ga[0:na]) and b into buffer (gb, eb); returns new count
    cdef i64 mul(self, int[::1] dat_a, i64 a0, i64 na,
                 int[::1] dat_b, i64 b0, i64 nb,
                 int[::1] buf) nogil:
        cdef i64 top = 0
        cdef i64 t
        cdef int g, e, ee
        for t in range(na):
            buf[2 * top] = dat_a[2 * (a0 + t)]
            buf[2 * top + 1] = dat_a[2 * (a0 + t) + 1]
            top += 1
        for t in range(nb):
            g = dat_b[2 * (b0 + t)]
            e = dat_b[2 * (b0 + t) + 1]
            if top > 0 and buf[2 * (top - 1)] == g:
                if self.kind == 0:
                    ee = buf[2 * (top - 1) + 1] + e
                else:
                    ee = (buf[2 * (top - 1) + 1] + e) % self.orders[g]
                if ee == 0:
                    top -= 1
                else:
                    buf[2 * (top - 1) + 1] = ee
            else:
                buf[2 * top] = g
                buf[2 * top + 1] = e
                top += 1
        return top

    cdef i64 wlen(self, int[::1] buf, i64 n) nogil:
        cdef i64 total = 0
        cdef i64 t
        if self.kind == 1:
            return n
        for t in range(n):
            if buf[2 * t + 1] >= 0:
                total += buf[2 * t + 1]
            else:
                total -= buf[2 * t + 1]
        return total

    # short-lex rank of the word in buf within its sphere S_wlen
    cdef i64 rank_free(self, int[::1] buf, i64 n, i64 k, i64[::1] pows) nogil:
        cdef i64 rank = 0
        cdef i64 t, reps, rr, pos_idx
        cdef int g, e, c, prev
        cdef i64 pw_idx = k - 1
        prev = -1
        for t in range(n):
            g = buf[2 * t]
            e = buf[2 * t + 1]
            if e > 0:
                c = 2 * g
                reps = e
            else:
                c = 2 * g + 1
                reps = -e
            for rr in range(reps):
                if prev < 0:
                    pos_idx = c
                else:
                    if c > (prev ^ 1):
                        pos_idx = c - 1
                    else:
                        pos_idx = c
                rank += pos_idx * pows[pw_idx]
                pw_idx -= 1
                prev = c
        return rank

    cdef i64 rank_zfp(self, int[::1] buf, i64 n, i64[:, ::1] tables) nogil:
        cdef i64 rank = 0
        cdef i64 t, rem
        cdef int g, e, q, prev
        prev = -1
        for t in range(n):
            g = buf[2 * t]
            e = buf[2 * t + 1]
            rem = n - 1 - t
            for q in range(g):
                if q != prev:
                    rank += (self.orders[q] - 1) * tables[rem, q]
            rank += (e - 1) * tables[rem, g]
            prev = g
        return rank

    def rank_pows(self, i64 kmax):
        """(2r-1)^t for t = 0..kmax (free); clamped to 1 for rank 1."""
        cdef i64 q = 2 * self.rank - 1
        out = np.ones(kmax + 1, dtype=np.int64)
        cdef i64[::1] ov = out
        cdef i64 t
        for t in range(1, kmax + 1):
            ov[t] = ov[t - 1] * q if q > 1 else 1
        return out

    def rank_tables(self, i64 kmax):
        """zfp completion counts N[t, q] for t = 0..kmax, q = 0..nf (nf = no constraint)."""
        out = np.ones((kmax + 1, self.nf + 1), dtype=np.int64)
        cdef i64[:, ::1] ov = out
        cdef i64 t
        cdef int q, p
        for t in range(1, kmax + 1):
            for q in range(self.nf + 1):
                ov[t, q] = 0
                for p in range(self.nf):
                    if p != q:
                        ov[t, q] += (self.orders[p] - 1) * ov[t - 1, p]
        return out

    def sphere_sizes(self, i64 kmax):
        """|S_k| for k = 0..kmax."""
        out = np.empty(kmax + 1, dtype=np.int64)
        cdef i64[::1] ov = out
        cdef i64 k
        if self.kind == 0:
            pows = self.rank_pows(kmax)
            ov[0] = 1
            for k in range(1, kmax + 1):
                ov[k] = 2 * self.rank * pows[k - 1]
        else:
            tables = self.rank_tables(kmax)
            for k in range(kmax + 1):
                ov[k] = tables[k, self.nf]
        return out


cdef i64 _max_len(i64[::1] offs):
    cdef i64 best = 0
    cdef i64 i
    for i in range(offs.shape[0] - 1):
        if offs[i + 1] - offs[i] > best:
            best = offs[i + 1] - offs[i]
    return best


def product_sphere_hits(spec, lefts, rights, target_len):
    cdef _GroupOps ops = _GroupOps(spec)
    da, oa = _pack(lefts)
    db, ob = _pack(rights)
    cdef int[::1] dav = da
    cdef i64[::1] oav = oa
    cdef int[::1] dbv = db
    cdef i64[::1] obv = ob
    cdef i64 nl = len(lefts)
    cdef i64 nr = len(rights)
    cdef i64 target = int(target_len)
    buf_np = np.empty(2 * (_max_len(oav) + _max_len(obv) + 2), dtype=np.int32)
    cdef int[::1] buf = buf_np
    li = np.empty(nl * nr, dtype=np.int64)
    ri = np.empty(nl * nr, dtype=np.int64)
    rk = np.empty(nl * nr, dtype=np.int64)
    cdef i64[::1] liv = li
    cdef i64[::1] riv = ri
    cdef i64[::1] rkv = rk
    # rank helper tables sized by the target sphere
    cdef i64[::1] pows = ops.rank_pows(target if target > 0 else 1)
    cdef i64[:, ::1] tables = ops.rank_tables(target if target > 0 else 1)
    cdef i64 i, j, top, count = 0
    with nogil:
        for i in range(nl):
            for j in range(nr):
                top = ops.mul(dav, oav[i], oav[i + 1] - oav[i],
                              dbv, obv[j], obv[j + 1] - obv[j], buf)
                if ops.wlen(buf, top) == target:
                    liv[count] = i
                    riv[count] = j
                    if ops.kind == 0:
                        rkv[count] = ops.rank_free(buf, top, target, pows)
                    else:
                        rkv[count] = ops.rank_zfp(buf, top, tables)
                    count += 1
    return li[:count].copy(), ri[:count].copy(), rk[:count].copy()


def product_ball_hits(spec, lefts, rights, radius):
    cdef _GroupOps ops = _GroupOps(spec)
    da, oa = _pack(lefts)
    db, ob = _pack(rights)
    cdef int[::1] dav = da
    cdef i64[::1] oav = oa
    cdef int[::1] dbv = db
    cdef i64[::1] obv = ob
    cdef i64 nl = len(lefts)
    cdef i64 nr = len(rights)
    cdef i64 R = int(radius)
    buf_np = np.empty(2 * (_max_len(oav) + _max_len(obv) + 2), dtype=np.int32)
    cdef int[::1] buf = buf_np
    li = np.empty(nl * nr, dtype=np.int64)
    ri = np.empty(nl * nr, dtype=np.int64)
    rk = np.empty(nl * nr, dtype=np.int64)
    cdef i64[::1] liv = li
    cdef i64[::1] riv = ri
    cdef i64[::1] rkv = rk
    sizes = ops.sphere_sizes(R)
    ball_offs = np.zeros(R + 2, dtype=np.int64)
    np.cumsum(sizes, out=ball_offs[1:])
    cdef i64[::1] bov = ball_offs
    cdef i64[::1] pows = ops.rank_pows(R if R > 0 else 1)
    cdef i64[:, ::1] tables = ops.rank_tables(R if R > 0 else 1)
    cdef i64 i, j, top, ln, count = 0
    with nogil:
        for i in range(nl):
            for j in range(nr):
                top = ops.mul(dav, oav[i], oav[i + 1] - oav[i],
                              dbv, obv[j], obv[j + 1] - obv[j], buf)
                ln = ops.wlen(buf, top)
                if ln <= R:
                    liv[count] = i
                    riv[count] = j
                    if ops.kind == 0:
                        rkv[count] = bov[ln] + ops.rank_free(buf, top, ln, pows)
                    else:
                        rkv[count] = bov[ln] + ops.rank_zfp(buf, top, tables)
                    count += 1
    return li[:count].copy(), ri[:count].copy(), rk[:count].copy()


def distance_table(spec, words):
    cdef _GroupOps ops = _GroupOps(spec)
    da, oa = _pack(words)
    cdef i64 n = len(words)
    # pack the inverses once
    cdef int[::1] dav = da
    cdef i64[::1] oav = oa
    di_np = np.empty_like(da)
    cdef int[::1] div = di_np
    cdef i64 i, t, ln, pos
    cdef int g, e
    for i in range(n):
        ln = oav[i + 1] - oav[i]
        for t in range(ln):
            g = dav[2 * (oav[i] + ln - 1 - t)]
            e = dav[2 * (oav[i] + ln - 1 - t) + 1]
            pos = oav[i] + t
            div[2 * pos] = g
            if ops.kind == 0:
                div[2 * pos + 1] = -e
            else:
                div[2 * pos + 1] = ops.orders[g] - e
    out = np.zeros((n, n), dtype=np.int32)
    cdef int[:, ::1] ov = out
    buf_np = np.empty(4 * (_max_len(oav) + 1), dtype=np.int32)
    cdef int[::1] buf = buf_np
    cdef i64 j, top
    with nogil:
        for i in range(n):
            for j in range(n):
                top = ops.mul(dav, oav[i], oav[i + 1] - oav[i],
                              div, oav[j], oav[j + 1] - oav[j], buf)
                ov[i, j] = <int> ops.wlen(buf, top)
    return out


def left_quotient_lengths(spec, words, y):
    cdef _GroupOps ops = _GroupOps(spec)
    da, oa = _pack(words)
    dy, oy = _pack([y])
    cdef int[::1] dav = da
    cdef i64[::1] oav = oa
    cdef int[::1] dyv = dy
    cdef i64[::1] oyv = oy
    cdef i64 n = len(words)
    # inverses of the words
    di_np = np.empty_like(da)
    cdef int[::1] div = di_np
    cdef i64 i, t, ln, pos
    cdef int g, e
    for i in range(n):
        ln = oav[i + 1] - oav[i]
        for t in range(ln):
            g = dav[2 * (oav[i] + ln - 1 - t)]
            e = dav[2 * (oav[i] + ln - 1 - t) + 1]
            pos = oav[i] + t
            div[2 * pos] = g
            if ops.kind == 0:
                div[2 * pos + 1] = -e
            else:
                div[2 * pos + 1] = ops.orders[g] - e
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] ov = out
    buf_np = np.empty(2 * (_max_len(oav) + _max_len(oyv) + 2), dtype=np.int32)
    cdef int[::1] buf = buf_np
    cdef i64 top
    with nogil:
        for i in range(n):
            top = ops.mul(div, oav[i], oav[i + 1] - oav[i],
                          dyv, oyv[0], oyv[1] - oyv[0], buf)
            ov[i] = <int> ops.wlen(buf, top)
    return out


def sphere_rank(spec, word):
    cdef _GroupOps ops = _GroupOps(spec)
    d, o = _pack([word])
    cdef int[::1] dv = d
    cdef i64[::1] ov = o
    cdef i64 n = ov[1] - ov[0]
    buf_np = np.empty(max(2 * n, 2), dtype=np.int32)
    cdef int[::1] buf = buf_np
    cdef i64 t
    for t in range(2 * n):
        buf[t] = dv[t]
    cdef i64 k = ops.wlen(buf, n)
    if k == 0:
        return 0
    if ops.kind == 0:
        return int(ops.rank_free(buf, n, k, ops.rank_pows(k)))
    return int(ops.rank_zfp(buf, n, ops.rank_tables(k)))
