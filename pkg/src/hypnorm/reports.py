"""Verification reports and their serialized forms.

One report describes one inequality trial: the inequality id, the trial
parameters, LHS/RHS values, the pass flag, and provenance (seed, tool
version, timing).  Reports serialize to JSON-lines with a fixed key order;
repeated runs of the same invocation produce byte-identical lines except
for the timing field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from . import __version__

PASS_SLACK = 1e-9  # pass iff lhs <= rhs * (1 + PASS_SLACK)
EQUALITY_TOL = 1e-6  # for equality-style checks (counterexample norm = t)


@dataclass(frozen=True)
class VerificationReport:
    ineq: str
    group: str
    k: int
    d: int
    R: int | None
    delta: int | None
    delta_unverified: bool | None
    seed: int
    trial: int
    m: int | None
    n: int | None
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    assertive: bool
    ms: float

    def to_json_dict(self) -> dict:
        return {
            "ineq": self.ineq,
            "group": self.group,
            "k": self.k,
            "d": self.d,
            "R": self.R,
            "delta": self.delta,
            "delta_unverified": self.delta_unverified,
            "seed": self.seed,
            "trial": self.trial,
            "m": self.m,
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "pass": self.passed,
            "assertive": self.assertive,
            "ms": self.ms,
            "version": __version__,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def make_report(
    ineq: str,
    group: str,
    k: int,
    d: int,
    lhs: float,
    rhs: float,
    *,
    R: int | None = None,
    delta: int | None = None,
    delta_unverified: bool | None = None,
    seed: int = 0,
    trial: int = 0,
    m: int | None = None,
    n: int | None = None,
    assertive: bool = True,
    equality: bool = False,
    ms: float = 0.0,
) -> VerificationReport:
    """Build a report, deriving ratio and the pass flag from lhs/rhs."""
    if rhs != 0.0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0.0 else float("inf")
    if equality:
        passed = abs(lhs - rhs) <= EQUALITY_TOL * max(abs(rhs), 1e-300)
    else:
        passed = lhs <= rhs * (1.0 + PASS_SLACK)
    return VerificationReport(
        ineq=ineq, group=group, k=k, d=d, R=R, delta=delta,
        delta_unverified=delta_unverified, seed=seed, trial=trial, m=m, n=n,
        lhs=float(lhs), rhs=float(rhs), ratio=float(ratio), passed=passed,
        assertive=assertive, ms=ms,
    )


def write_jsonl(reports: Iterable[VerificationReport], out: TextIO) -> None:
    for rep in reports:
        out.write(rep.to_json())
        out.write("\n")


_COLUMNS = ("ineq", "group", "k", "d", "R", "delta", "trial", "m", "n", "lhs", "rhs", "ratio", "pass")


def write_table(reports: Sequence[VerificationReport], out: TextIO) -> None:
    rows = []
    for rep in reports:
        doc = rep.to_json_dict()
        row = []
        for c in _COLUMNS:
            v = doc[c]
            if isinstance(v, float):
                row.append(f"{v:.6g}")
            elif v is None:
                row.append("-")
            else:
                row.append(str(v))
        rows.append(row)
    widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(_COLUMNS)]
    out.write("  ".join(c.ljust(widths[i]) for i, c in enumerate(_COLUMNS)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(row[i].ljust(widths[i]) for i in range(len(_COLUMNS))).rstrip() + "\n")


def exit_code(reports: Iterable[VerificationReport]) -> int:
    """0 if every assertive report passed, else 2."""
    return 0 if all(r.passed or not r.assertive for r in reports) else 2
