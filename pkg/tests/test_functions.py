"""Sphere-supported functions: validation, star, serialization, random trials."""

import json

import numpy as np
import pytest
from scipy import sparse

from hypnorm.errors import InvalidInputError
from hypnorm.functions import (
    SphereFunction,
    delta_function,
    random_sphere_function,
    sphere_indicator,
)


def test_validation(free2):
    a = free2.parse_element("a1^1")
    with pytest.raises(InvalidInputError):
        SphereFunction(free2, 2, 1, {a: np.ones((1, 1))})  # wrong sphere
    with pytest.raises(InvalidInputError):
        SphereFunction(free2, 1, 2, {a: np.ones((1, 1))})  # wrong shape
    with pytest.raises(InvalidInputError):
        SphereFunction(free2, 1, 0, {})
    f = SphereFunction(free2, 1, 1, {a: np.full((1, 1), 2.0 + 1j)})
    assert f.l2_norm() == pytest.approx(abs(2 + 1j))


def test_support_sorted_shortlex(free2):
    sphere = free2.enumerate_sphere(2)
    items = {sphere.elements[i]: np.full((1, 1), float(i)) for i in (5, 0, 7, 2)}
    f = SphereFunction(free2, 2, 1, items)
    assert [sphere.position[x] for x in f.support] == [0, 2, 5, 7]


def test_star_involution_and_hermitian(free2, z33):
    for G in (free2, z33):
        f = random_sphere_function(G, 2, 2, 1.0, seed=5)
        fss = f.star().star()
        assert set(fss.support) == set(f.support)
        for x in f.support:
            assert np.array_equal(fss.support[x], f.support[x])
        assert not f.is_hermitian()
        supp = {x: np.asarray(v).copy() for x, v in f.support.items()}
        for x, v in f.star().support.items():
            supp[x] = supp.get(x, 0) + np.asarray(v)
        assert SphereFunction(G, 2, 2, supp).is_hermitian()


def test_star_lengths(free2):
    f = random_sphere_function(free2, 3, 1, 1.0, seed=8)
    g = f.star()
    assert g.k == 3
    assert set(g.support) == {free2.inv(x) for x in f.support}


def test_delta_and_indicator(free2):
    a = free2.parse_element("a1^1")
    f = delta_function(free2, a, dim=3)
    assert f.k == 1 and f.dim == 3
    assert np.array_equal(f.support[a], np.eye(3))
    chi = sphere_indicator(free2, 2)
    assert len(chi.support) == 12
    assert chi.l2_norm() == pytest.approx(np.sqrt(12))


def test_json_roundtrip(free2, z33):
    for G, d in ((free2, 1), (free2, 2), (z33, 3)):
        f = random_sphere_function(G, 2, d, 1.0, seed=13)
        doc = json.loads(f.to_json())
        assert doc["group"] == G.descriptor
        assert doc["k"] == 2 and doc["dim"] == d
        g = SphereFunction.from_json(f.to_json())
        assert set(g.support) == set(f.support)
        for x in f.support:
            assert np.allclose(np.asarray(g.support[x]), np.asarray(f.support[x]))


def test_json_sparse_coefficients(free2):
    a = free2.parse_element("a1^1")
    unit = sparse.csr_matrix((np.ones(1), ([0], [1])), shape=(2, 2), dtype=complex)
    f = SphereFunction(free2, 1, 2, {a: unit})
    doc = f.to_json_dict()
    assert doc["entries"][0]["coeff"] == [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]


def test_random_sphere_function_determinism(free2):
    f = random_sphere_function(free2, 2, 2, 1.0, seed=99)
    g = random_sphere_function(free2, 2, 2, 1.0, seed=99)
    assert set(f.support) == set(g.support)
    for x in f.support:
        assert np.array_equal(f.support[x], g.support[x])
    assert len(f.support) == 12  # density 1 keeps the whole sphere
    seeds_differ = any(
        not np.array_equal(
            random_sphere_function(free2, 2, 1, 1.0, seed=s).support[x],
            f.support[x][:1, :1],
        )
        for s in range(10)
        for x in list(f.support)[:1]
    )
    assert seeds_differ


def test_random_density(free2):
    sizes = [len(random_sphere_function(free2, 3, 1, 0.4, seed=s).support) for s in range(30)]
    assert 0 < sum(sizes) / len(sizes) < 36  # strictly between empty and full on average
    with pytest.raises(InvalidInputError):
        random_sphere_function(free2, 2, 1, 0.0, seed=1)
    with pytest.raises(InvalidInputError):
        random_sphere_function(free2, 2, 1, 1.5, seed=1)
