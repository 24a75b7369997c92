"""Block matrices of sphere-supported functions and truncated convolution
operators.

Everything here is an exact finite matrix:

* `assemble_M(f, i, j)` — the S_i x S_j block matrix with block (y1, y2)
  equal to f(y1 * y2^-1); equivalently the compression of the convolution
  operator from l2(S_j) (x) C^d to l2(S_i) (x) C^d.
* `block_operator(f, m, n)` — the same matrix in its P_m lambda(f) P_n
  reading; zero when |m - n| > k.
* `truncated_lambda(f, R)` — the convolution operator compressed to
  l2(B_R) (x) C^d; its norm is a lower bound of the true operator norm,
  non-decreasing in R.

Assembly iterates the support against the column index through the batch
kernels, so only the O(|support| * |columns|) products are ever formed; the
resulting matrices are sparse CSR with deterministic layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from . import _kernels as kernels
from .functions import SphereFunction
from .groups import BallIndex, GroupModel, SphereIndex


@dataclass(frozen=True)
class BlockOperator:
    """A sphere-indexed block matrix; kind is "Mij" or "PmLambdaPn"."""

    row_sphere: SphereIndex
    col_sphere: SphereIndex
    dim: int
    matrix: sparse.csr_matrix
    kind: str


@dataclass(frozen=True)
class TruncatedOperator:
    """The convolution operator of f compressed to the ball B_R."""

    group: GroupModel
    radius: int
    dim: int
    ball: BallIndex
    matrix: sparse.csr_matrix


def _coefficient_triplets(f: SphereFunction):
    """Concatenated nonzero triplets (row, col, value) of every coefficient
    block, with offsets per support element (sorted support order)."""
    bis, bjs, vals = [], [], []
    offs = [0]
    for v in f.coefficients():
        if sparse.issparse(v):
            coo = v.tocoo()
            order = np.lexsort((coo.col, coo.row))
            bi = coo.row[order].astype(np.int64)
            bj = coo.col[order].astype(np.int64)
            vv = coo.data[order].astype(np.complex128)
            keep = vv != 0
            bi, bj, vv = bi[keep], bj[keep], vv[keep]
        else:
            arr = np.asarray(v)
            bi, bj = np.nonzero(arr)
            bi = bi.astype(np.int64)
            bj = bj.astype(np.int64)
            vv = arr[bi, bj].astype(np.complex128)
        bis.append(bi)
        bjs.append(bj)
        vals.append(vv)
        offs.append(offs[-1] + len(vv))
    if bis:
        return (
            np.concatenate(bis),
            np.concatenate(bjs),
            np.concatenate(vals),
            np.asarray(offs, dtype=np.int64),
        )
    return (
        np.zeros(0, np.int64),
        np.zeros(0, np.int64),
        np.zeros(0, np.complex128),
        np.asarray(offs, dtype=np.int64),
    )


def _expand_hits(hits, triplets, d: int, nrows: int, ncols: int) -> sparse.csr_matrix:
    """Scatter per-hit coefficient blocks into the (nrows*d) x (ncols*d) matrix."""
    supp_idx, col_idx, row_rank = hits
    bi_all, bj_all, val_all, offs = triplets
    shape = (nrows * d, ncols * d)
    if len(supp_idx) == 0:
        return sparse.csr_matrix(shape, dtype=np.complex128)
    counts = offs[supp_idx + 1] - offs[supp_idx]
    total = int(counts.sum())
    if total == 0:
        return sparse.csr_matrix(shape, dtype=np.complex128)
    rep = np.repeat(np.arange(len(supp_idx)), counts)
    excl = np.concatenate(([0], np.cumsum(counts)[:-1]))
    idx = np.arange(total, dtype=np.int64) - np.repeat(excl, counts) + np.repeat(offs[supp_idx], counts)
    rows = row_rank[rep] * d + bi_all[idx]
    cols = col_idx[rep] * d + bj_all[idx]
    data = val_all[idx]
    return sparse.csr_matrix((data, (rows, cols)), shape=shape, dtype=np.complex128)


def assemble_M(f: SphereFunction, i: int, j: int, cap: int | None = None) -> BlockOperator:
    """The S_i x S_j block matrix M_{i,j}(f) with block (y1, y2) = f(y1*y2^-1)."""
    return _assemble(f, i, j, "Mij", cap)


def block_operator(f: SphereFunction, m: int, n: int, cap: int | None = None) -> BlockOperator:
    """The compression P_m lambda(f) P_n as an exact finite matrix.

    Identical entries to assemble_M(f, m, n); when |m - n| > f.k every entry
    vanishes by the triangle inequality and the zero matrix is returned.
    """
    return _assemble(f, m, n, "PmLambdaPn", cap)


def _assemble(f: SphereFunction, i: int, j: int, kind: str, cap) -> BlockOperator:
    rows = f.group.enumerate_sphere(i, cap=cap)
    cols = f.group.enumerate_sphere(j, cap=cap)
    if abs(i - j) > f.k or not f.support:
        matrix = sparse.csr_matrix((len(rows) * f.dim, len(cols) * f.dim), dtype=np.complex128)
        return BlockOperator(rows, cols, f.dim, matrix, kind)
    # block (y1, y2) is f(x) iff y1 = x * y2 with x in the support
    hits = kernels.product_sphere_hits(
        f.group.kernel_spec, f.support_words(), cols.words(), i
    )
    matrix = _expand_hits(hits, _coefficient_triplets(f), f.dim, len(rows), len(cols))
    return BlockOperator(rows, cols, f.dim, matrix, kind)


def truncated_lambda(f: SphereFunction, R: int, cap: int | None = None) -> TruncatedOperator:
    """The convolution operator of f on l2(B_R) (x) C^d, stored sparsely."""
    ball = f.group.enumerate_ball(R, cap=cap)
    if not f.support:
        matrix = sparse.csr_matrix((len(ball) * f.dim, len(ball) * f.dim), dtype=np.complex128)
        return TruncatedOperator(f.group, R, f.dim, ball, matrix)
    hits = kernels.product_ball_hits(f.group.kernel_spec, f.support_words(), ball.words(), R)
    matrix = _expand_hits(hits, _coefficient_triplets(f), f.dim, len(ball), len(ball))
    return TruncatedOperator(f.group, R, f.dim, ball, matrix)


def extract_sphere_block(top: TruncatedOperator, m: int, n: int) -> sparse.csr_matrix:
    """The (S_m, S_n) sub-block of a truncated operator (rows S_m, cols S_n)."""
    d = top.dim
    rs = top.ball.sphere_slice(m)
    cs = top.ball.sphere_slice(n)
    return top.matrix[rs.start * d : rs.stop * d, cs.start * d : cs.stop * d].tocsr()
