"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: sphere
enumeration is cross-checked by breadth-first closure of generator
products, hyperbolicity by a full four-tuple scan, block assembly by a
naive dictionary-based double loop.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from hypnorm.groups import GroupElement, GroupModel, parse_group


@pytest.fixture(scope="session")
def free1() -> GroupModel:
    return parse_group("free:1")


@pytest.fixture(scope="session")
def free2() -> GroupModel:
    return parse_group("free:2")


@pytest.fixture(scope="session")
def z33() -> GroupModel:
    return parse_group("zfp:3,3")


@pytest.fixture(scope="session")
def z23() -> GroupModel:
    return parse_group("zfp:2,3")


def generators(G: GroupModel) -> list[GroupElement]:
    """The full symmetric generating set, built directly from the group data."""
    gens = []
    if G.kind == "free":
        for g in range(G.rank):
            gens.append(GroupElement(((g, 1),)))
            gens.append(GroupElement(((g, -1),)))
    else:
        for q, m in enumerate(G.orders):
            for e in range(1, m):
                gens.append(GroupElement(((q, e),)))
    return gens


def bfs_spheres(G: GroupModel, kmax: int) -> list[set[GroupElement]]:
    """Spheres S_0..S_kmax as sets, by breadth-first closure of generator
    products (independent of the short-lex enumerator)."""
    gens = generators(G)
    seen = {G.identity}
    spheres = [{G.identity}]
    frontier = {G.identity}
    for _ in range(kmax):
        nxt = set()
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in seen:
                    nxt.add(y)
        seen |= nxt
        spheres.append(nxt)
        frontier = nxt
    return spheres


def full_four_point_delta(G: GroupModel, R: int) -> int:
    """Unreduced four-point scan over all of B_R^4 (the slow oracle)."""
    from hypnorm import _kernels as kernels
    from hypnorm.groups import enumerate_ball

    ball = enumerate_ball(G, R)
    D = kernels.distance_table(G.kernel_spec, ball.words()).astype(int)
    n = len(ball.elements)
    best = 0
    for x, y, z, w in itertools.product(range(n), repeat=4):
        s1 = D[x, y] + D[z, w]
        s2 = D[x, z] + D[y, w]
        s3 = D[x, w] + D[y, z]
        best = max(best, s1 - max(s2, s3))
    return best


def naive_block_matrix(f, i: int, j: int) -> np.ndarray:
    """Dense M_{i,j}(f) by the definition: double loop over S_i x S_j with a
    support dictionary lookup."""
    from scipy import sparse

    G = f.group
    rows = G.enumerate_sphere(i)
    cols = G.enumerate_sphere(j)
    d = f.dim
    out = np.zeros((len(rows.elements) * d, len(cols.elements) * d), dtype=complex)
    for a, y1 in enumerate(rows.elements):
        for b, y2 in enumerate(cols.elements):
            x = G.mul(y1, G.inv(y2))
            v = f.support.get(x)
            if v is not None:
                arr = v.toarray() if sparse.issparse(v) else np.asarray(v)
                out[a * d : (a + 1) * d, b * d : (b + 1) * d] = arr
    return out


def tree_ball_adjacency_norm(R: int) -> float:
    """Top eigenvalue of the 4-regular tree's ball adjacency via the radial
    Jacobi matrix (off-diagonals 2, sqrt(3), sqrt(3), ...)."""
    J = np.zeros((R + 1, R + 1))
    for j in range(R):
        J[j, j + 1] = J[j + 1, j] = 2.0 if j == 0 else np.sqrt(3.0)
    return float(np.linalg.eigvalsh(J)[-1])
