"""Exhaustive checks of the geodesic-decomposition invariants behind the
block-compression bound.

For spheres S_m, S_k, S_n with |m - n| <= k and p = n + k - m, every triple
(y, z, x = y*z) with lengths (k, n, m) is enumerated.  Writing
(x1, x2) for the deterministic split of x into lengths
(k - ceil(p/2), n - floor(p/2)) and u = y^-1 * x1, three facts are checked
against a supplied hyperbolicity constant delta:

(a) ceil(p/2) <= len(u) <= ceil(p/2) + delta for every record;
(b) for each x in S_m, the number of factorizations x = x1*x2 with the
    split lengths is at most #B_delta;
(c) for each z in S_n and each s in 0..delta, the number of pairs
    (x2, u) with len(u) = ceil(p/2)+s and u*x2 = z is at most #B_{delta+s+1}.

A violation signals either an underestimated delta or an implementation
bug; the report distinguishes the two by re-running the checks with
delta + 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import InvalidInputError
from .functions import SphereFunction
from .groups import GroupElement, geodesic_split


@dataclass(frozen=True)
class TraceRecord:
    """One enumerated decomposition: y*z = x, (x1,x2) the split, u = y^-1*x1."""

    x: GroupElement
    x1: GroupElement
    x2: GroupElement
    y: GroupElement
    z: GroupElement
    u: GroupElement
    s: int  # len(u) - ceil(p/2); meaningful when the window check passes


@dataclass(frozen=True)
class ProofTraceReport:
    group: str
    k: int
    m: int
    n: int
    delta: int
    p: int
    prefix_len: int  # k - ceil(p/2)
    suffix_len: int  # n - floor(p/2)
    n_records: int
    u_window: tuple[int, int]
    u_observed: tuple[int, int] | None
    x_mult_bound: int
    x_mult_max: int
    z_count_checks: tuple[tuple[int, int, int], ...]  # (s, bound, observed max)
    violations: tuple[str, ...]
    ok: bool
    min_slack: int | None  # tightest margin across all checks; negative on violation
    retry_delta_ok: bool | None  # result of the delta+1 re-run, set on violation
    records: tuple[TraceRecord, ...] | None


def proof_trace_check(
    f: SphereFunction,
    m: int,
    n: int,
    delta: int,
    keep_records: bool = False,
    cap: int | None = None,
    _retry: bool = True,
) -> ProofTraceReport:
    """Run the three decomposition checks for the spheres (m, k, n) of f's group."""
    G = f.group
    k = f.k
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    if abs(m - n) > k:
        raise InvalidInputError(f"|m-n| = {abs(m - n)} exceeds k = {k}")
    p = n + k - m
    half_up = (p + 1) // 2
    half_down = p // 2
    a = k - half_up
    b = n - half_down
    window = (half_up, half_up + delta)
    spec = G.kernel_spec

    if b < 0:
        # m + n < k: no triple y*z = x can satisfy the three lengths at all
        return ProofTraceReport(
            group=G.descriptor, k=k, m=m, n=n, delta=delta, p=p,
            prefix_len=a, suffix_len=b, n_records=0, u_window=window,
            u_observed=None, x_mult_bound=G.ball_size(delta), x_mult_max=0,
            z_count_checks=(), violations=(), ok=True, min_slack=None,
            retry_delta_ok=None, records=None,
        )

    sphere_k = G.enumerate_sphere(k, cap=cap)
    sphere_n = G.enumerate_sphere(n, cap=cap)
    sphere_m = G.enumerate_sphere(m, cap=cap)
    sphere_a = G.enumerate_sphere(a, cap=cap)
    sphere_b = G.enumerate_sphere(b, cap=cap)

    violations: list[str] = []
    slacks: list[int] = []
    records: list[TraceRecord] = []

    # enumerate the triples y*z = x and check the u-length window
    y_idx, z_idx, x_rank = kernels.product_sphere_hits(
        spec, sphere_k.words(), sphere_n.words(), m
    )
    splits: dict[int, tuple[GroupElement, GroupElement]] = {}
    u_min, u_max = None, None
    for yi, zi, xr in zip(y_idx, z_idx, x_rank):
        x = sphere_m.elements[xr]
        pair = splits.get(xr)
        if pair is None:
            pair = geodesic_split(G, x, a, b)
            splits[xr] = pair
        x1, x2 = pair
        y = sphere_k.elements[yi]
        u = G.mul(G.inv(y), x1)
        lu = G.length(u)
        u_min = lu if u_min is None else min(u_min, lu)
        u_max = lu if u_max is None else max(u_max, lu)
        slacks.append(lu - window[0])
        slacks.append(window[1] - lu)
        if keep_records:
            records.append(
                TraceRecord(
                    x=x, x1=x1, x2=x2, y=y, z=sphere_n.elements[zi], u=u,
                    s=lu - window[0],
                )
            )
    if u_min is not None and (u_min < window[0] or u_max > window[1]):
        violations.append(
            f"u-length window violated: observed [{u_min}, {u_max}], "
            f"allowed [{window[0]}, {window[1]}]"
        )

    # per-x multiplicity of split-length factorizations
    x_mult_bound = G.ball_size(delta)
    _, _, xr_b = kernels.product_sphere_hits(spec, sphere_a.words(), sphere_b.words(), m)
    if len(xr_b):
        mult = np.bincount(xr_b, minlength=len(sphere_m.elements))
        x_mult_max = int(mult.max())
    else:
        x_mult_max = 0
    slacks.append(x_mult_bound - x_mult_max)
    if x_mult_max > x_mult_bound:
        violations.append(
            f"per-x factorization count {x_mult_max} exceeds #B_{delta} = {x_mult_bound}"
        )

    # per-z counts of (x2, u) pairs for each window offset s
    z_checks = []
    for s in range(delta + 1):
        sphere_u = G.enumerate_sphere(half_up + s, cap=cap)
        _, _, zr = kernels.product_sphere_hits(spec, sphere_u.words(), sphere_b.words(), n)
        observed = int(np.bincount(zr, minlength=len(sphere_n.elements)).max()) if len(zr) else 0
        bound = G.ball_size(delta + s + 1)
        z_checks.append((s, bound, observed))
        slacks.append(bound - observed)
        if observed > bound:
            violations.append(
                f"per-z pair count {observed} at s={s} exceeds #B_{delta + s + 1} = {bound}"
            )

    retry_ok = None
    if violations and _retry:
        retry_ok = proof_trace_check(
            f, m, n, delta + 1, keep_records=False, cap=cap, _retry=False
        ).ok

    return ProofTraceReport(
        group=G.descriptor, k=k, m=m, n=n, delta=delta, p=p,
        prefix_len=a, suffix_len=b, n_records=len(y_idx), u_window=window,
        u_observed=(u_min, u_max) if u_min is not None else None,
        x_mult_bound=x_mult_bound, x_mult_max=x_mult_max,
        z_count_checks=tuple(z_checks), violations=tuple(violations),
        ok=not violations,
        min_slack=min(slacks) if slacks else None,
        retry_delta_ok=retry_ok,
        records=tuple(records) if keep_records else None,
    )
