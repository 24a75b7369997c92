"""Geodesic-decomposition trace checks."""

import pytest

from hypnorm.errors import InvalidInputError
from hypnorm.functions import SphereFunction
from hypnorm.trace import proof_trace_check


def _f(G, k):
    return SphereFunction(G, k, 1, {})


def test_window_exact_on_tree(free2):
    # k=2, m=2, n=2: p=2, every u has length exactly 1
    rep = proof_trace_check(_f(free2, 2), 2, 2, 0)
    assert rep.ok
    assert rep.p == 2 and rep.u_window == (1, 1)
    assert rep.u_observed == (1, 1)
    assert rep.n_records > 0


def test_multiplicity_one_on_tree(free2):
    for m, n in ((2, 2), (3, 1), (1, 3), (4, 2), (3, 3)):
        rep = proof_trace_check(_f(free2, 2), m, n, 0)
        assert rep.ok, (m, n, rep.violations)
        assert rep.x_mult_bound == 1  # #B_0
        if rep.n_records:
            assert rep.x_mult_max == 1


def test_boundary_p_zero(free2):
    # m = n + k: p = 0, x1 spans S_k, u = e allowed
    rep = proof_trace_check(_f(free2, 2), 4, 2, 0)
    assert rep.ok
    assert rep.p == 0
    assert rep.u_window == (0, 0)
    assert rep.prefix_len == 2 and rep.suffix_len == 2
    assert rep.u_observed == (0, 0)


def test_degenerate_no_records(free2):
    # m + n < k: no decomposition exists; vacuous pass
    rep = proof_trace_check(_f(free2, 3), 0, 0, 0)
    assert rep.ok and rep.n_records == 0


def test_invalid_inputs(free2):
    with pytest.raises(InvalidInputError):
        proof_trace_check(_f(free2, 1), 5, 1, 0)
    with pytest.raises(InvalidInputError):
        proof_trace_check(_f(free2, 1), 1, 1, -1)


def test_records_kept_consistent(free2):
    # note (m, n) must have m = k + n (mod 2): free-group products of S_k x S_n
    # only reach spheres of the same parity
    rep = proof_trace_check(_f(free2, 2), 3, 3, 0, keep_records=True)
    assert rep.records and len(rep.records) == rep.n_records
    G = free2
    for r in rep.records[:200]:
        assert G.mul(r.y, r.z) == r.x
        assert G.mul(r.x1, r.x2) == r.x
        assert G.mul(r.u, r.x2) == r.z  # z = u * x2
        assert G.length(r.y) == 2 and G.length(r.z) == 3 and G.length(r.x) == 3
        assert r.s == G.length(r.u) - rep.u_window[0]


def test_zfp_no_violations(z33):
    for m in range(4):
        for n in range(4):
            if abs(m - n) <= 2:
                rep = proof_trace_check(_f(z33, 2), m, n, 0)
                assert rep.ok, (m, n, rep.violations)


def test_violation_diagnosis_via_underestimated_bounds(free2, monkeypatch):
    # force a violation by shrinking the ball-size bound at delta=0; the
    # report must flag it and the delta+1 re-run must succeed
    real_ball_size = free2.ball_size
    monkeypatch.setattr(free2, "ball_size", lambda s: 0 if s == 0 else real_ball_size(s))
    rep = proof_trace_check(_f(free2, 2), 2, 2, 0)
    assert not rep.ok
    assert any("per-x" in v for v in rep.violations)
    assert rep.retry_delta_ok is True
    assert rep.min_slack is not None and rep.min_slack < 0
    monkeypatch.undo()
    assert proof_trace_check(_f(free2, 2), 2, 2, 0).ok


def test_positive_delta_widens_window(free2):
    # with delta = 1 the window widens and the tree still satisfies everything
    rep = proof_trace_check(_f(free2, 2), 2, 2, 1)
    assert rep.ok
    assert rep.u_window == (1, 2)
    assert len(rep.z_count_checks) == 2  # s = 0, 1
