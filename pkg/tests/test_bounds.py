"""The right-hand-side bound formulas and their cross-checks."""

import math

import pytest

from hypnorm.bounds import (
    block_norm,
    bound_buchholz,
    bound_haagerup_scalar,
    bound_lemma_block,
    bound_main_theorem,
    bound_rapid_decay,
    bound_remark3,
    gram_norms,
    multiplicity_weighted,
)
from hypnorm.errors import InvalidInputError, UnsupportedBoundError
from hypnorm.functions import delta_function, random_sphere_function, sphere_indicator
from hypnorm.operators import block_operator, truncated_lambda
from hypnorm.spectral import operator_norm


def test_haagerup_scalar_examples(free2):
    fa = delta_function(free2, free2.parse_element("a1^1"))
    assert bound_haagerup_scalar(fa) == pytest.approx(2.0)
    assert bound_haagerup_scalar(sphere_indicator(free2, 1)) == pytest.approx(4.0)
    assert bound_haagerup_scalar(sphere_indicator(free2, 2)) == pytest.approx(3 * math.sqrt(12))
    with pytest.raises(InvalidInputError):
        bound_haagerup_scalar(random_sphere_function(free2, 1, 2, 1.0, seed=1))


def test_rapid_decay_examples(free2):
    assert bound_rapid_decay(free2, {free2.identity: 1.0}) == pytest.approx(2.0)
    assert bound_rapid_decay(free2, {free2.parse_element("a1^1"): 1.0}) == pytest.approx(8.0)


def test_rapid_decay_matches_direct_summation(free2):
    # random scalar function on B_3, seed 11, against an independent summation
    from hypnorm.rng import Xorshift64Star

    rng = Xorshift64Star(11)
    coeffs = {x: rng.complex_normal() for x in free2.enumerate_ball(3).elements}
    got = bound_rapid_decay(free2, coeffs)
    expected = 2.0 * math.sqrt(
        sum(abs(c) ** 2 * (1 + free2.length(x)) ** 4 for x, c in coeffs.items())
    )
    assert got == pytest.approx(expected, rel=1e-12)
    # sphere functions are accepted directly
    f = random_sphere_function(free2, 2, 1, 1.0, seed=2)
    assert bound_rapid_decay(free2, f) == pytest.approx(2.0 * 9 * f.l2_norm(), rel=1e-12)


def test_buchholz_examples(free2, z33):
    fa = delta_function(free2, free2.parse_element("a1^1"))
    assert bound_buchholz(fa) == pytest.approx(2.0)
    with pytest.raises(UnsupportedBoundError):
        bound_buchholz(random_sphere_function(z33, 1, 1, 1.0, seed=1))
    # scalar case is dominated by the Hilbert-Schmidt bound
    for k in (1, 2, 3):
        for seed in range(5):
            f = random_sphere_function(free2, k, 1, 1.0, seed=seed)
            assert bound_buchholz(f) <= bound_haagerup_scalar(f) + 1e-9


def test_buchholz_k1_gram_crosscheck(free2):
    # the S_1 column/row norms are Gram sums, and the bound is within 2*max
    for d in (1, 2, 3):
        f = random_sphere_function(free2, 1, d, 1.0, seed=60 + d)
        gl, gr = gram_norms(f)
        assert block_norm(f, 1, 0) == pytest.approx(gl, rel=1e-10)
        assert block_norm(f, 0, 1) == pytest.approx(gr, rel=1e-10)
        assert bound_buchholz(f) <= 2 * max(gl, gr) * (1 + 1e-9)


def test_main_theorem_examples(free2):
    fa = delta_function(free2, free2.parse_element("a1^1"))
    assert bound_main_theorem(fa, 0) == pytest.approx(20.0)  # 2 * #B_1 * 2
    for k in (1, 2):
        f = random_sphere_function(free2, k, 1, 1.0, seed=70 + k)
        assert bound_main_theorem(f, 0) == pytest.approx(
            2 * free2.ball_size(1) * bound_buchholz(f), rel=1e-12
        )
    with pytest.raises(InvalidInputError):
        bound_main_theorem(fa, -1)


def test_main_theorem_delta_band(free2):
    # delta > 0 adds the k < i+j <= k+delta band; strictly larger than delta = 0
    f = random_sphere_function(free2, 2, 1, 1.0, seed=77)
    b0 = bound_main_theorem(f, 0)
    b1 = bound_main_theorem(f, 1)
    assert b1 > b0
    # band terms with |i-j| > k contribute nothing: compare against a direct sum
    cache = {}
    total = 0.0
    for tot in (2, 3):
        for i in range(tot + 1):
            j = tot - i
            if abs(i - j) <= 2:
                total += block_norm(f, j, i, cache)
    assert b1 == pytest.approx(2 * free2.ball_size(3) * total, rel=1e-12)


def test_lemma_block_examples(free2):
    fa = delta_function(free2, free2.parse_element("a1^1"))
    # k=1, m=1, n=0: p=0, single term ||M_{1,0}|| = 1, bound = #B_1
    assert bound_lemma_block(fa, 1, 0, 0) == pytest.approx(5.0)
    f = random_sphere_function(free2, 2, 1, 1.0, seed=81)
    # m=n=k: p=k, single term at delta=0
    expected = free2.ball_size(1) * block_norm(f, 2 - 1, 1)
    assert bound_lemma_block(f, 2, 2, 0) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(InvalidInputError):
        bound_lemma_block(f, 6, 1, 0)  # |m-n| > k


def test_lemma_block_dominates_exact_blocks(free2):
    f = random_sphere_function(free2, 3, 1, 1.0, seed=5)
    cache = {}
    for m in range(7):
        for n in range(7):
            if abs(m - n) > 3:
                continue
            lhs = operator_norm(block_operator(f, m, n).matrix).value
            rhs = bound_lemma_block(f, m, n, 0, cache)
            assert lhs <= rhs * (1 + 1e-9), (m, n, lhs, rhs)


def test_remark3_free_collapses_to_buchholz(free2):
    # multiplicities are all 1 on a tree, so the weighted bound equals 2*#B_1*buchholz
    for k in (1, 2):
        f = random_sphere_function(free2, k, 1, 1.0, seed=90 + k)
        assert bound_remark3(f, 0) == pytest.approx(
            2 * free2.ball_size(1) * bound_buchholz(f), rel=1e-10
        )


def test_remark3_zfp_pipeline(z33):
    f = sphere_indicator(z33, 2)
    rhs = bound_remark3(f, 0)
    lhs = operator_norm(truncated_lambda(f, 5).matrix).value
    assert lhs <= rhs * (1 + 1e-9)
    # multiplicity-weighted function: zero-multiplicity elements drop out
    ft = multiplicity_weighted(f, 2, 0)
    assert set(ft.support) == set(f.support)


def test_inequality_suite_random_trials(free2, z33):
    # lower-bound-safe verification of every applicable bound on seeded trials
    for seed in range(4):
        f = random_sphere_function(free2, 2, 1, 1.0, seed=100 + seed)
        lhs = operator_norm(truncated_lambda(f, 5).matrix).value
        assert lhs <= bound_haagerup_scalar(f) * (1 + 1e-9)
        assert lhs <= bound_buchholz(f) * (1 + 1e-9)
        assert lhs <= bound_main_theorem(f, 0) * (1 + 1e-9)
        assert lhs <= bound_rapid_decay(free2, f) * (1 + 1e-9)
    for seed in range(3):
        g = random_sphere_function(z33, 2, 2, 1.0, seed=200 + seed)
        lhs = operator_norm(truncated_lambda(g, 4).matrix).value
        assert lhs <= bound_main_theorem(g, 0) * (1 + 1e-9)
