"""Operator-valued functions supported on a word-length sphere.

A `SphereFunction` maps elements of S_k to d x d complex coefficient
matrices (dense ndarrays or scipy sparse); the scalar case is d = 1.  The
support iterates in short-lex order, so everything assembled from a
function is reproducible across runs.  Functions serialize to a JSON form
with syllable-string keys for reproducing verification trials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy import sparse

from . import _kernels as kernels
from .errors import InvalidInputError
from .groups import GroupElement, GroupModel, parse_group
from .rng import Xorshift64Star


def _as_coeff(value, dim: int):
    if sparse.issparse(value):
        if value.shape != (dim, dim):
            raise InvalidInputError(
                f"coefficient shape {value.shape} does not match dim {dim}"
            )
        return value
    arr = np.asarray(value, dtype=np.complex128)
    if arr.shape != (dim, dim):
        raise InvalidInputError(f"coefficient shape {arr.shape} does not match dim {dim}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SphereFunction:
    """f in E_k(G) (x) B(C^d): finitely supported map S_k -> d x d matrices."""

    group: GroupModel
    k: int
    dim: int
    support: dict[GroupElement, object]

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInputError("sphere radius k must be nonnegative")
        if self.dim < 1:
            raise InvalidInputError("coefficient dimension must be >= 1")
        spec = self.group.kernel_spec
        items = []
        for x, v in self.support.items():
            self.group.validate(x)
            if self.group.length(x) != self.k:
                raise InvalidInputError(
                    f"support element {x} has length {self.group.length(x)}, expected {self.k}"
                )
            items.append((kernels.sphere_rank(spec, x.syllables), x, _as_coeff(v, self.dim)))
        items.sort(key=lambda t: t[0])
        object.__setattr__(self, "support", {x: v for _, x, v in items})

    # -- views -------------------------------------------------------------

    def support_words(self) -> list:
        return [x.syllables for x in self.support]

    def coefficients(self) -> list:
        return list(self.support.values())

    def scalar_items(self) -> list[tuple[GroupElement, complex]]:
        if self.dim != 1:
            raise InvalidInputError("scalar view requires dim == 1")
        out = []
        for x, v in self.support.items():
            c = v.toarray()[0, 0] if sparse.issparse(v) else v[0, 0]
            out.append((x, complex(c)))
        return out

    def l2_norm(self) -> float:
        """sqrt of the summed squared Frobenius norms of the coefficients."""
        total = 0.0
        for v in self.support.values():
            if sparse.issparse(v):
                total += float(np.sum(np.abs(v.tocsr().data) ** 2))
            else:
                total += float(np.sum(np.abs(v) ** 2))
        return float(np.sqrt(total))

    def star(self) -> "SphereFunction":
        """The adjoint function f*(y) = f(y^-1)*."""
        supp = {}
        for x, v in self.support.items():
            xi = self.group.inv(x)
            supp[xi] = v.conj().T if not sparse.issparse(v) else v.conj().T.tocsr()
        return SphereFunction(self.group, self.k, self.dim, supp)

    def is_hermitian(self) -> bool:
        g = self.star()
        if set(g.support) != set(self.support):
            return False
        for x, v in self.support.items():
            a = v.toarray() if sparse.issparse(v) else v
            b = g.support[x]
            b = b.toarray() if sparse.issparse(b) else b
            if not np.array_equal(a, b):
                return False
        return True

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        entries = []
        for x, v in self.support.items():
            arr = v.toarray() if sparse.issparse(v) else v
            coeff = [[float(c.real), float(c.imag)] for c in np.asarray(arr).ravel()]
            entries.append({"x": self.group.format_element(x), "coeff": coeff})
        return {
            "group": self.group.descriptor,
            "k": self.k,
            "dim": self.dim,
            "entries": entries,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(doc: Mapping) -> "SphereFunction":
        group = parse_group(doc["group"])
        k = int(doc["k"])
        dim = int(doc["dim"])
        supp = {}
        for entry in doc["entries"]:
            x = group.parse_element(entry["x"])
            flat = np.array([complex(re, im) for re, im in entry["coeff"]])
            if flat.size != dim * dim:
                raise InvalidInputError(
                    f"coefficient for {entry['x']} has {flat.size} entries, expected {dim * dim}"
                )
            supp[x] = flat.reshape(dim, dim)
        return SphereFunction(group, k, dim, supp)

    @staticmethod
    def from_json(text: str) -> "SphereFunction":
        return SphereFunction.from_json_dict(json.loads(text))


def delta_function(G: GroupModel, x: GroupElement, dim: int = 1) -> SphereFunction:
    """The indicator of a single element with identity coefficient."""
    return SphereFunction(G, G.length(x), dim, {x: np.eye(dim, dtype=np.complex128)})


def sphere_indicator(G: GroupModel, k: int, cap: int | None = None) -> SphereFunction:
    """The characteristic function of S_k (scalar)."""
    one = np.ones((1, 1), dtype=np.complex128)
    sphere = G.enumerate_sphere(k, cap=cap)
    return SphereFunction(G, k, 1, {x: one for x in sphere.elements})


def random_sphere_function(
    G: GroupModel,
    k: int,
    dim: int = 1,
    density: float = 1.0,
    seed: int = 0,
    cap: int | None = None,
) -> SphereFunction:
    """Seeded random f on S_k: each element kept with probability `density`,
    coefficients i.i.d. complex Gaussian d x d matrices.  Deterministic for
    fixed arguments."""
    if not (0.0 < density <= 1.0):
        raise InvalidInputError(f"density must lie in (0, 1], got {density}")
    sphere = G.enumerate_sphere(k, cap=cap)
    rng = Xorshift64Star(seed)
    supp = {}
    for x in sphere.elements:
        keep = rng.uniform() < density
        if keep:
            m = np.empty((dim, dim), dtype=np.complex128)
            for i in range(dim):
                for j in range(dim):
                    m[i, j] = rng.complex_normal()
            supp[x] = m
    return SphereFunction(G, k, dim, supp)
