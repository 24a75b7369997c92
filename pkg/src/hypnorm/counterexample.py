"""The rank-one obstruction showing no polynomial-weighted Gram bound can
hold uniformly: matrix-unit coefficients placed on products of T_k words.

T_k is the set of reduced words of length k in free:2 that start with the
first generator and do not end with its inverse (|T_k| = t).  The function
f on S_2k with f(g_i * g_j) = E_{i,j} (matrix units, coefficient dimension
t) makes M_{k,k}(f) rank one with norm exactly t after deleting zero rows
and columns, while the polynomial-weighted Gram right-hand side grows like
2 * (1+2k)^d * sqrt(t); since t grows geometrically, the ratio eventually
exceeds 1 for every fixed exponent d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ._wordops import free_letters
from .errors import InvalidInputError, ResourceLimitError
from .functions import SphereFunction
from .groups import FreeGroup, GroupElement, resolve_cap
from .operators import assemble_M
from .spectral import operator_norm

_F2 = FreeGroup(2)


def t_count(k: int) -> int:
    """|T_k| by the transfer recurrence on last letters (exact for all k)."""
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    # letter codes: 0 = a, 1 = a^-1, 2 = b, 3 = b^-1; words start with a
    counts = [1, 0, 0, 0]
    for _ in range(k - 1):
        counts = [
            sum(c for l, c in enumerate(counts) if l != (letter ^ 1))
            for letter in range(4)
        ]
    return sum(c for letter, c in enumerate(counts) if letter != 1)


def enumerate_t(k: int, cap: int | None = None) -> list[GroupElement]:
    """T_k in short-lex sphere order."""
    sphere = _F2.enumerate_sphere(k, cap=cap)
    out = []
    for x in sphere.elements:
        letters = free_letters(x.syllables)
        if letters[0] == 0 and letters[-1] != 1:
            out.append(x)
    return out


def build_counterexample(k: int, cap: int | None = None) -> SphereFunction:
    """f in E_2k(free:2) (x) B(C^t) with f(g_i * g_j) = E_{i,j}, t = |T_k|.

    The products g_i * g_j are reduced of length 2k by construction (g_i
    does not end with the inverse of the letter g_j starts with), so the
    support has exactly t^2 elements.  Coefficients are stored as sparse
    t x t matrix units.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    limit = resolve_cap(cap)
    t = t_count(k)
    if t * t > limit:
        raise ResourceLimitError(
            f"counterexample support size {t * t} exceeds the cap {limit}",
            cap=limit,
            requested=t * t,
        )
    words = enumerate_t(k, cap=cap)
    assert len(words) == t
    supp = {}
    one = np.ones(1, dtype=np.complex128)
    for i, gi in enumerate(words):
        for j, gj in enumerate(words):
            unit = sparse.csr_matrix((one, ([i], [j])), shape=(t, t), dtype=np.complex128)
            supp[_F2.mul(gi, gj)] = unit
    return SphereFunction(_F2, 2 * k, t, supp)


@dataclass(frozen=True)
class CounterexampleReport:
    k: int
    d_exponent: int
    t: int
    lhs_lower: float  # ||M_{k,k}(f)|| = t, the certified lower bound of the LHS
    rhs: float  # 2 * (1+2k)^d * sqrt(t)
    ratio: float
    norm_value: float | None  # numerically verified ||M_{k,k}(f)||, when computed
    norm_rel_err: float | None


def counterexample_report(
    k: int,
    d_exponent: int = 1,
    verify_norm: bool | None = None,
    cap: int | None = None,
) -> CounterexampleReport:
    """Compare the certified norm lower bound t with the weighted Gram RHS.

    The norm identity ||M_{k,k}(f)|| = t is verified numerically for small k
    (default: k <= 5); beyond that the analytic rank-one value is reported.
    """
    if d_exponent < 0:
        raise InvalidInputError("d_exponent must be nonnegative")
    t = t_count(k)
    rhs = 2.0 * (1 + 2 * k) ** d_exponent * math.sqrt(t)
    ratio = t / rhs
    norm_value = None
    rel_err = None
    if verify_norm is None:
        verify_norm = k <= 5
    if verify_norm:
        f = build_counterexample(k, cap=cap)
        norm_value = operator_norm(assemble_M(f, k, k, cap=cap).matrix).value
        rel_err = abs(norm_value - t) / t
    return CounterexampleReport(
        k=k,
        d_exponent=d_exponent,
        t=t,
        lhs_lower=float(t),
        rhs=rhs,
        ratio=ratio,
        norm_value=norm_value,
        norm_rel_err=rel_err,
    )


def first_ratio_exceeding(d_exponent: int, k_max: int = 64) -> int | None:
    """Smallest k <= k_max with t_k / (2 (1+2k)^d sqrt(t_k)) > 1, else None."""
    for k in range(1, k_max + 1):
        t = t_count(k)
        if math.sqrt(t) > 2.0 * (1 + 2 * k) ** d_exponent:
            return k
    return None
