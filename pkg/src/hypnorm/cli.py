"""Command-line front end.

Subcommands:

* ``spheres``        — sphere and ball sizes (optionally the elements).
* ``delta``          — four-point hyperbolicity scan, radius by radius.
* ``verify``         — seeded inequality verification campaigns.
* ``counterexample`` — the matrix-unit obstruction table.
* ``trace``          — geodesic decomposition invariant checks.

Exit codes: 0 all assertive checks passed; 2 at least one violation;
3 resource limit exceeded; 64 usage error.

Option values resolve as flags > config file (TOML or JSON, ``--config``) >
built-in defaults (d = 1, density = 1, trials = 10, tol = 1e-6, R = k+4).
The enumeration cap is taken from the ``HYPNORM_CAP`` environment variable
when set.  ``--rhs-scale`` multiplies every right-hand side and exists to
exercise the exit-code contract in integration tests.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .bounds import (
    block_norm,
    bound_buchholz,
    bound_haagerup_scalar,
    bound_lemma_block,
    bound_main_theorem,
    bound_rapid_decay,
    bound_remark3,
    gram_norms,
)
from .counterexample import counterexample_report, enumerate_t, first_ratio_exceeding, t_count
from .errors import HypnormError, InvalidInputError, ResourceLimitError
from .functions import SphereFunction, random_sphere_function
from .groups import GroupModel, delta_profile, estimate_delta, parse_group
from .operators import block_operator, truncated_lambda
from .reports import exit_code, make_report, write_jsonl, write_table
from .rng import derive_seed
from .spectral import operator_norm
from .trace import proof_trace_check

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 64

INEQUALITIES = ("haagerup", "buchholz", "main", "lemma-block", "remark3", "rd", "counterexample")
FREE_ONLY = {"haagerup", "buchholz", "rd", "counterexample"}
NEEDS_DELTA = {"main", "lemma-block", "remark3"}

DEFAULTS = {
    "dim": 1,
    "density": 1.0,
    "trials": 10,
    "seed": 1,
    "tol": 1e-6,
    "rhs_scale": 1.0,
    "format": "jsonl",
    "d_exponent": 1,
}


class UsageError(HypnormError, ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 64, not argparse's default 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="hypnorm", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"hypnorm {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="TOML or JSON config file (flags take precedence)")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("jsonl", "table"), default=None,
                        help="report format (default jsonl)")

    sp = sub.add_parser("spheres", help="sphere and ball sizes")
    sp.add_argument("--group", required=True)
    sp.add_argument("--k-max", type=int, required=True)
    sp.add_argument("--elements", action="store_true", help="also list the elements")
    add_common(sp)

    dp = sub.add_parser("delta", help="four-point hyperbolicity scan")
    dp.add_argument("--group", required=True)
    dp.add_argument("--radius", type=int, required=True)
    add_common(dp)

    vp = sub.add_parser("verify", help="seeded inequality verification")
    vp.add_argument("--ineq", help="comma-separated inequality ids: " + ", ".join(INEQUALITIES))
    vp.add_argument("--group", help="group descriptor, e.g. free:2 or zfp:3,3")
    vp.add_argument("--k", help="sphere radius or comma list (e.g. 2 or 1,2,3)")
    vp.add_argument("--dim", type=int, help="coefficient dimension d (default 1)")
    vp.add_argument("--trials", type=int, help="trials per (ineq, k) (default 10)")
    vp.add_argument("--seed", type=int, help="campaign seed (default 1)")
    vp.add_argument("--radius", type=int, help="truncation radius R (default k+4)")
    vp.add_argument("--density", type=float, help="support density in (0,1] (default 1)")
    vp.add_argument("--delta", help="delta source: proven | estimate:R | override:N")
    vp.add_argument("--m-max", type=int, help="lemma-block: max sphere radius for (m,n)")
    vp.add_argument("--tol", type=float, help="norm tolerance (default 1e-6)")
    vp.add_argument("--rhs-scale", type=float, help="multiply every RHS (testing hook)")
    vp.add_argument("--d-exponent", type=int, help="weight exponent for counterexample reports")
    add_common(vp)

    cp = sub.add_parser("counterexample", help="matrix-unit obstruction table")
    cp.add_argument("--k-max", type=int, required=True)
    cp.add_argument("--d-exponent", type=int, default=None)
    cp.add_argument("--verify-norms-to", type=int, default=0,
                    help="numerically verify the norm identity for k up to this value")
    add_common(cp)

    tp = sub.add_parser("trace", help="geodesic decomposition invariant checks")
    tp.add_argument("--group", required=True)
    tp.add_argument("--k", type=int, required=True)
    tp.add_argument("--m", type=int)
    tp.add_argument("--n", type=int)
    tp.add_argument("--m-max", type=int, help="check all (m,n) with |m-n| <= k up to this radius")
    tp.add_argument("--delta", help="delta source: proven | estimate:R | override:N")
    add_common(tp)

    return p


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        return json.loads(raw.decode())
    try:
        return tomllib.loads(raw.decode())
    except Exception:
        try:
            return json.loads(raw.decode())
        except Exception:
            raise UsageError(f"config file {path} is neither valid TOML nor JSON") from None


def _opt(args, config: dict, name: str, default=None):
    """flags > config > defaults."""
    v = getattr(args, name, None)
    if v is not None:
        return v
    if name in config:
        return config[name]
    return DEFAULTS.get(name, default)


def _resolve_group(descriptor) -> GroupModel:
    if not descriptor:
        raise UsageError("--group is required")
    try:
        return parse_group(str(descriptor))
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None


def _resolve_delta(source, G: GroupModel, needed: bool) -> tuple[int, bool]:
    """(delta, unverified flag) from a source string.

    `proven` only applies to groups with a built-in constant (free groups);
    it is rejected otherwise so a ball estimate is never silently treated
    as exact.
    """
    if source is None:
        if G.proven_delta is not None:
            return G.proven_delta, False
        if not needed:
            return 0, True
        raise UsageError(
            f"{G.descriptor} has no proven hyperbolicity constant; "
            "pass --delta estimate:R or --delta override:N explicitly"
        )
    s = str(source).strip()
    if s == "proven":
        if G.proven_delta is None:
            raise UsageError(
                f"--delta proven is not available for {G.descriptor}; "
                "use estimate:R or override:N"
            )
        return G.proven_delta, False
    if s.startswith("estimate:"):
        try:
            radius = int(s.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"malformed delta source {s!r}") from None
        return estimate_delta(G, radius).delta, True
    if s.startswith("override:"):
        try:
            return int(s.split(":", 1)[1]), True
        except ValueError:
            raise UsageError(f"malformed delta source {s!r}") from None
    raise UsageError(f"unknown delta source {s!r} (expected proven | estimate:R | override:N)")


def _parse_k_list(value) -> list[int]:
    if value is None:
        raise UsageError("--k is required for verify")
    if isinstance(value, int):
        return [value]
    out = []
    for part in str(value).split(","):
        try:
            out.append(int(part))
        except ValueError:
            raise UsageError(f"malformed --k value {value!r}") from None
    if not out or any(k < 0 for k in out):
        raise UsageError(f"--k values must be nonnegative, got {value!r}")
    return out


# -- verify -------------------------------------------------------------------


def _lhs_norm(matrix, tol) -> float:
    """Norm of a truncated operator: lower-bound-safe power iteration beyond
    tiny sizes (under-estimation can only hide violations, never fake them)."""
    return operator_norm(matrix, tol, exact_threshold=64).value


def _verify_one_trial(ineq, G, k, dim, R, delta, delta_unverified, trial, seed, trial_seed,
                      density, tol, rhs_scale):
    t0 = time.perf_counter()
    f = random_sphere_function(G, k, dim, density, trial_seed)
    cache: dict = {}
    reports = []
    common = dict(R=R, delta=delta, delta_unverified=delta_unverified,
                  seed=seed, trial=trial)

    def lhs_truncated():
        return _lhs_norm(truncated_lambda(f, R).matrix, tol)

    if ineq == "haagerup":
        lhs, rhs = lhs_truncated(), bound_haagerup_scalar(f)
    elif ineq == "buchholz":
        lhs, rhs = lhs_truncated(), bound_buchholz(f, cache)
        if k == 1:
            # S_1 row/column cross-check: the extreme block norms must match
            # the Gram sums computed directly
            gl, gr = gram_norms(f)
            col = block_norm(f, 1, 0, cache)
            row = block_norm(f, 0, 1, cache)
            if abs(col - gl) > 1e-8 * max(gl, 1.0) or abs(row - gr) > 1e-8 * max(gr, 1.0):
                rhs = float("nan")  # force the report to fail loudly
    elif ineq == "main":
        lhs, rhs = lhs_truncated(), bound_main_theorem(f, delta, cache)
    elif ineq == "remark3":
        lhs, rhs = lhs_truncated(), bound_remark3(f, delta)
    elif ineq == "rd":
        lhs, rhs = lhs_truncated(), bound_rapid_decay(G, f)
    else:
        raise UsageError(f"unknown inequality {ineq!r}")
    ms = (time.perf_counter() - t0) * 1000.0
    reports.append(
        make_report(ineq, G.descriptor, k, dim, lhs, rhs * rhs_scale,
                    assertive=(ineq != "remark3"), ms=ms, **common)
    )
    return reports


def _verify_lemma_block(G, k, dim, delta, delta_unverified, m_max, trial, seed, trial_seed,
                        density, tol, rhs_scale):
    f = random_sphere_function(G, k, dim, density, trial_seed)
    cache: dict = {}
    reports = []
    for m in range(m_max + 1):
        for n in range(m_max + 1):
            if abs(m - n) > k:
                continue
            t0 = time.perf_counter()
            # exact block norms: this suite has no truncation gap
            lhs = operator_norm(block_operator(f, m, n).matrix, tol).value
            rhs = bound_lemma_block(f, m, n, delta, cache)
            ms = (time.perf_counter() - t0) * 1000.0
            reports.append(
                make_report("lemma-block", G.descriptor, k, dim, lhs, rhs * rhs_scale,
                            R=None, delta=delta, delta_unverified=delta_unverified,
                            seed=seed, trial=trial, m=m, n=n, ms=ms)
            )
    return reports


def _verify_counterexample(k, d_exponent, rhs_scale, seed):
    t0 = time.perf_counter()
    rep = counterexample_report(k, d_exponent, verify_norm=True)
    ms = (time.perf_counter() - t0) * 1000.0
    # equality check: the numerically computed norm must match t
    return [
        make_report("counterexample", "free:2", 2 * k, rep.t, rep.norm_value, float(rep.t),
                    R=None, delta=None, delta_unverified=None, seed=seed,
                    trial=0, equality=True, ms=ms)
    ]


def _cmd_verify(args) -> int:
    config = _load_config(args.config)
    ineqs = _opt(args, config, "ineq")
    if not ineqs:
        raise UsageError("--ineq is required")
    ineq_list = [s.strip() for s in str(ineqs).split(",") if s.strip()]
    for ineq in ineq_list:
        if ineq not in INEQUALITIES:
            raise UsageError(f"unknown inequality {ineq!r}; choose from {', '.join(INEQUALITIES)}")
    G = _resolve_group(_opt(args, config, "group"))
    k_list = _parse_k_list(_opt(args, config, "k"))
    dim = int(_opt(args, config, "dim"))
    trials = int(_opt(args, config, "trials"))
    seed = int(_opt(args, config, "seed"))
    density = float(_opt(args, config, "density"))
    tol = float(_opt(args, config, "tol"))
    rhs_scale = float(_opt(args, config, "rhs_scale"))
    d_exponent = int(_opt(args, config, "d_exponent"))
    radius_opt = _opt(args, config, "radius")
    m_max_opt = _opt(args, config, "m_max")
    delta_src = _opt(args, config, "delta")

    if dim < 1:
        raise UsageError("--dim must be >= 1")
    if trials < 1:
        raise UsageError("--trials must be >= 1")

    reports = []
    for ineq in ineq_list:
        if ineq in FREE_ONLY and not G.is_free:
            raise UsageError(f"inequality {ineq!r} is only asserted for free groups")
        if ineq == "counterexample" and G.descriptor != "free:2":
            raise UsageError("the counterexample construction is specific to free:2")
        if ineq in ("haagerup", "rd") and dim != 1:
            raise UsageError(f"inequality {ineq!r} requires --dim 1")
        needs_delta = ineq in NEEDS_DELTA
        delta, delta_unverified = _resolve_delta(delta_src, G, needs_delta) if needs_delta else (None, None)
        for k in k_list:
            R = int(radius_opt) if radius_opt is not None else k + 4
            for trial in range(trials):
                trial_seed = derive_seed(seed, trial)
                if ineq == "lemma-block":
                    m_max = int(m_max_opt) if m_max_opt is not None else k + 3
                    reports.extend(
                        _verify_lemma_block(G, k, dim, delta, delta_unverified, m_max,
                                            trial, seed, trial_seed, density, tol, rhs_scale)
                    )
                elif ineq == "counterexample":
                    reports.extend(_verify_counterexample(k, d_exponent, rhs_scale, seed))
                    break  # deterministic; one report per k
                else:
                    reports.extend(
                        _verify_one_trial(ineq, G, k, dim, R, delta, delta_unverified,
                                          trial, seed, trial_seed, density, tol, rhs_scale)
                    )
    _emit(args, config, reports)
    failed = sum(1 for r in reports if r.assertive and not r.passed)
    print(f"{len(reports)} reports, {failed} violations", file=sys.stderr)
    return exit_code(reports)


# -- other subcommands ---------------------------------------------------------


def _cmd_spheres(args) -> int:
    config = _load_config(args.config)
    G = _resolve_group(args.group)
    if args.k_max < 0:
        raise UsageError("--k-max must be nonnegative")
    lines = []
    for k in range(args.k_max + 1):
        sphere = G.enumerate_sphere(k)
        doc = {"group": G.descriptor, "k": k, "sphere_size": len(sphere),
               "ball_size": G.ball_size(k)}
        if args.elements:
            doc["elements"] = [G.format_element(x) for x in sphere.elements]
        lines.append(doc)
    _emit_json_docs(args, config, lines,
                    table=lambda d: f"S_{d['k']:<3d} |S_k| = {d['sphere_size']:<10d} |B_k| = {d['ball_size']}")
    return EXIT_OK


def _cmd_delta(args) -> int:
    config = _load_config(args.config)
    G = _resolve_group(args.group)
    if args.radius < 1:
        raise UsageError("--radius must be >= 1")
    estimates = delta_profile(G, args.radius)
    docs = [
        {"group": G.descriptor, "radius": e.radius, "ball_size": G.ball_size(e.radius),
         "delta": e.delta, "is_exhaustive": e.is_exhaustive}
        for e in estimates
    ]
    _emit_json_docs(args, config, docs,
                    table=lambda d: (f"R = {d['radius']:<3d} |B_R| = {d['ball_size']:<8d} "
                                     f"delta = {d['delta']:<3d} exhaustive = {d['is_exhaustive']}"))
    return EXIT_OK


def _cmd_counterexample(args) -> int:
    config = _load_config(args.config)
    if args.k_max < 1:
        raise UsageError("--k-max must be >= 1")
    d_exp = args.d_exponent if args.d_exponent is not None else int(_opt(args, config, "d_exponent"))
    docs = []
    first_flagged = None
    for k in range(1, args.k_max + 1):
        t = len(enumerate_t(k)) if k <= 10 else t_count(k)
        rep = counterexample_report(k, d_exp, verify_norm=(k <= args.verify_norms_to))
        doc = {"k": k, "t": t, "lhs": float(t), "rhs": rep.rhs, "ratio": rep.ratio,
               "exceeds": rep.ratio > 1.0}
        if rep.norm_value is not None:
            doc["norm_value"] = rep.norm_value
            doc["norm_rel_err"] = rep.norm_rel_err
        if first_flagged is None and doc["exceeds"]:
            first_flagged = k
        docs.append(doc)
    _emit_json_docs(args, config, docs,
                    table=lambda d: (f"k = {d['k']:<3d} t = {d['t']:<12d} rhs = {d['rhs']:<14.4f} "
                                     f"ratio = {d['ratio']:.6f}{'  <-- ratio > 1' if d['exceeds'] else ''}"))
    msg = (f"first ratio > 1 at k = {first_flagged}" if first_flagged is not None
           else f"ratio stays <= 1 up to k = {args.k_max} "
                f"(first exceedance at k = {first_ratio_exceeding(d_exp)})")
    print(msg, file=sys.stderr)
    return EXIT_OK


def _cmd_trace(args) -> int:
    config = _load_config(args.config)
    G = _resolve_group(args.group)
    k = args.k
    if k < 0:
        raise UsageError("--k must be nonnegative")
    delta, delta_unverified = _resolve_delta(_opt(args, config, "delta"), G, needed=True)
    f = SphereFunction(G, k, 1, {})  # the checks depend only on (group, k)
    pairs = []
    if args.m is not None and args.n is not None:
        pairs = [(args.m, args.n)]
    elif args.m_max is not None:
        pairs = [
            (m, n)
            for m in range(args.m_max + 1)
            for n in range(args.m_max + 1)
            if abs(m - n) <= k
        ]
    else:
        raise UsageError("pass either --m and --n, or --m-max")
    docs = []
    any_violation = False
    for m, n in pairs:
        rep = proof_trace_check(f, m, n, delta)
        any_violation |= not rep.ok
        docs.append(
            {"group": G.descriptor, "k": k, "m": m, "n": n, "delta": delta,
             "delta_unverified": delta_unverified, "p": rep.p,
             "records": rep.n_records, "u_window": list(rep.u_window),
             "u_observed": list(rep.u_observed) if rep.u_observed else None,
             "x_mult_max": rep.x_mult_max, "x_mult_bound": rep.x_mult_bound,
             "z_checks": [list(c) for c in rep.z_count_checks],
             "min_slack": rep.min_slack, "ok": rep.ok,
             "violations": list(rep.violations),
             "retry_delta_ok": rep.retry_delta_ok}
        )
    _emit_json_docs(args, config, docs,
                    table=lambda d: (f"(m,n) = ({d['m']},{d['n']})  records = {d['records']:<7d} "
                                     f"u in {d['u_observed']} ~ {d['u_window']}  ok = {d['ok']}"))
    return EXIT_VIOLATION if any_violation else EXIT_OK


# -- output plumbing ------------------------------------------------------------


def _open_out(args):
    if args.out:
        return open(args.out, "w"), True
    return sys.stdout, False


def _emit(args, config, reports) -> None:
    fmt = _opt(args, config, "format")
    out, close = _open_out(args)
    try:
        if fmt == "table":
            write_table(reports, out)
        else:
            write_jsonl(reports, out)
    finally:
        if close:
            out.close()


def _emit_json_docs(args, config, docs, table=None) -> None:
    fmt = _opt(args, config, "format")
    out, close = _open_out(args)
    try:
        for doc in docs:
            if fmt == "table" and table is not None:
                out.write(table(doc) + "\n")
            else:
                out.write(json.dumps(doc, separators=(",", ":")) + "\n")
    finally:
        if close:
            out.close()


_COMMANDS = {
    "spheres": _cmd_spheres,
    "delta": _cmd_delta,
    "verify": _cmd_verify,
    "counterexample": _cmd_counterexample,
    "trace": _cmd_trace,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except HypnormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
