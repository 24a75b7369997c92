"""Right-hand-side bound formulas for the operator-norm inequalities.

Each bound returns the numeric value of one inequality's right-hand side
for a given sphere-supported function:

* `bound_haagerup_scalar` — (k+1) * ||f||_2 for scalar f on a free group.
* `bound_rapid_decay`     — 2 * (sum |f(x)|^2 (1+len(x))^4)^(1/2) for any
  finitely supported scalar f.
* `bound_buchholz`        — sum_{j=0..k} ||M_{j,k-j}(f)|| (free groups).
* `bound_main_theorem`    — 2 * #B_{1+2*delta} * sum of ||M_{j,i}(f)|| over
  the band k <= i+j <= k+delta (hyperbolic groups).
* `bound_lemma_block`     — #B_{1+2*delta} * sum_{s=0..delta}
  ||M_{k-ceil(p/2), ceil(p/2)+s}(f)|| with p = n+k-m, bounding the exact
  compression P_m lambda(f) P_n.
* `bound_remark3`         — 2 * #B_{1+2*delta} * sum_{i+j=k}
  ||M_{i,j}(f~_{i,j})|| with coefficients divided by their decomposition
  multiplicities; a checked conjecture, reported but never asserted.

Block norms are computed exactly (the index spheres involved are small);
an optional `norm_cache` dict, keyed by (i, j), avoids recomputing blocks
shared between bounds of the same function.
"""

from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .errors import InvalidInputError, UnsupportedBoundError
from .functions import SphereFunction
from .groups import GroupElement, GroupModel, decomposition_multiplicity
from .operators import assemble_M
from .spectral import operator_norm


def block_norm(
    f: SphereFunction,
    i: int,
    j: int,
    norm_cache: dict | None = None,
    cap: int | None = None,
) -> float:
    """||M_{i,j}(f)||, exactly; cached per (i, j) when a cache dict is given."""
    if norm_cache is not None and (i, j) in norm_cache:
        return norm_cache[(i, j)]
    value = operator_norm(assemble_M(f, i, j, cap=cap).matrix).value
    if norm_cache is not None:
        norm_cache[(i, j)] = value
    return value


def bound_haagerup_scalar(f: SphereFunction) -> float:
    """(k+1) * ||f||_2 for a scalar function supported on S_k."""
    if f.dim != 1:
        raise InvalidInputError("the scalar Haagerup bound requires dim == 1")
    return (f.k + 1) * f.l2_norm()


def bound_rapid_decay(
    G: GroupModel, coeffs: Mapping[GroupElement, complex] | SphereFunction
) -> float:
    """2 * (sum_x |f(x)|^2 (1 + len(x))^4)^(1/2) for finitely supported scalar f."""
    if isinstance(coeffs, SphereFunction):
        items = coeffs.scalar_items()
    else:
        items = list(coeffs.items())
    total = 0.0
    for x, c in items:
        total += abs(complex(c)) ** 2 * (1 + G.length(x)) ** 4
    return 2.0 * math.sqrt(total)


def bound_buchholz(
    f: SphereFunction, norm_cache: dict | None = None, cap: int | None = None
) -> float:
    """sum_{j=0..k} ||M_{j,k-j}(f)||; asserted for free groups only."""
    if not f.group.is_free:
        raise UnsupportedBoundError(
            "the word-decomposition bound is only asserted for free groups; "
            f"got {f.group.descriptor}"
        )
    return sum(block_norm(f, j, f.k - j, norm_cache, cap) for j in range(f.k + 1))


def bound_main_theorem(
    f: SphereFunction,
    delta: int,
    norm_cache: dict | None = None,
    cap: int | None = None,
) -> float:
    """2 * #B_{1+2*delta} * sum_{k <= i+j <= k+delta} ||M_{j,i}(f)||.

    Index pairs with |i - j| > k are provably zero blocks and are skipped
    without being assembled.
    """
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    k = f.k
    total = 0.0
    for tot in range(k, k + delta + 1):
        for i in range(tot + 1):
            j = tot - i
            if abs(i - j) > k:
                continue
            total += block_norm(f, j, i, norm_cache, cap)
    return 2.0 * f.group.ball_size(1 + 2 * delta) * total


def bound_lemma_block(
    f: SphereFunction,
    m: int,
    n: int,
    delta: int,
    norm_cache: dict | None = None,
    cap: int | None = None,
) -> float:
    """#B_{1+2*delta} * sum_{s=0..delta} ||M_{k-ceil(p/2), ceil(p/2)+s}(f)||
    with p = n + k - m; bounds ||P_m lambda(f) P_n||."""
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    k = f.k
    if abs(m - n) > k:
        raise InvalidInputError(
            f"|m-n| = {abs(m - n)} exceeds k = {k}; the block is identically zero"
        )
    p = n + k - m
    half_up = (p + 1) // 2
    total = sum(
        block_norm(f, k - half_up, half_up + s, norm_cache, cap) for s in range(delta + 1)
    )
    return f.group.ball_size(1 + 2 * delta) * total


def multiplicity_weighted(
    f: SphereFunction, i: int, j: int, cap: int | None = None
) -> SphereFunction:
    """f~_{i,j}: coefficients divided by the decomposition multiplicities
    d_{i,j}(y); elements with multiplicity 0 drop out of the support."""
    supp = {}
    for x, v in f.support.items():
        dmult = decomposition_multiplicity(f.group, x, i, j, cap=cap)
        if dmult:
            arr = v.toarray() if hasattr(v, "toarray") else np.asarray(v)
            supp[x] = arr / dmult
    return SphereFunction(f.group, f.k, f.dim, supp)


def bound_remark3(
    f: SphereFunction, delta: int, cap: int | None = None
) -> float:
    """2 * #B_{1+2*delta} * sum_{i+j=k} ||M_{i,j}(f~_{i,j})||.

    A checked conjecture: the underlying inequality is stated without full
    proof, so callers report violations instead of treating them as bugs.
    """
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    k = f.k
    total = 0.0
    for i in range(k + 1):
        j = k - i
        ft = multiplicity_weighted(f, i, j, cap=cap)
        total += operator_norm(assemble_M(ft, i, j, cap=cap).matrix).value
    return 2.0 * f.group.ball_size(1 + 2 * delta) * total


def gram_norms(f: SphereFunction) -> tuple[float, float]:
    """(||sum f(x)*f(x)||^(1/2), ||sum f(x)f(x)*||^(1/2)) by direct summation.

    Cross-checks ||M_{k,0}(f)|| and ||M_{0,k}(f)|| for k = 1 functions (the
    S_1 row/column bound)."""
    d = f.dim
    left = np.zeros((d, d), dtype=np.complex128)
    right = np.zeros((d, d), dtype=np.complex128)
    for v in f.coefficients():
        arr = v.toarray() if hasattr(v, "toarray") else np.asarray(v)
        left += arr.conj().T @ arr
        right += arr @ arr.conj().T
    return (
        float(np.sqrt(operator_norm(left).value)),
        float(np.sqrt(operator_norm(right).value)),
    )
