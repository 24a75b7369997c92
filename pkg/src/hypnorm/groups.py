"""Finitely generated groups with computable normal forms and word metrics.

Two group families are supported, both with symmetric generating sets:

* ``FreeGroup(r)`` — generators a1..ar and their inverses; the word length
  of a reduced word is its letter count.
* ``CyclicFreeProduct(m1, m2, ...)`` — the free product Z/m1 * Z/m2 * ...
  generated by *all* non-identity elements of each factor, so every
  syllable contributes exactly 1 to the word length.

Elements are immutable syllable sequences in canonical reduced normal form;
equality of elements is equality of normal forms.  Spheres and balls
enumerate in short-lex order, deterministically across runs, and their
positions agree with the arithmetic rank functions used by the batch
kernels.

Group descriptors parse from strings: ``free:R`` and ``zfp:M1,M2,...``.
Elements serialize as syllable strings such as ``a1^1.a2^-1`` (identity:
``e``).
"""

from __future__ import annotations

import abc
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as kernels
from . import _wordops as w
from .errors import (
    InvalidElementError,
    InvalidInputError,
    InvalidSplitError,
    ResourceLimitError,
)

DEFAULT_CAP = 5_000_000


def resolve_cap(cap: int | None = None) -> int:
    """Effective enumeration cap: explicit argument, else HYPNORM_CAP, else default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("HYPNORM_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInputError(f"HYPNORM_CAP must be an integer, got {env!r}") from None
    return DEFAULT_CAP


@dataclass(frozen=True)
class GroupElement:
    """A group element as a reduced syllable word ((generator, exponent), ...)."""

    syllables: w.Word

    def __str__(self) -> str:
        return w.format_word(self.syllables)

    def __repr__(self) -> str:
        return f"GroupElement({w.format_word(self.syllables)!r})"


IDENTITY = GroupElement(())


@dataclass(frozen=True)
class SphereIndex:
    """The sphere S_k, short-lex ordered, with element -> index lookup."""

    radius: int
    elements: tuple[GroupElement, ...]
    position: dict[GroupElement, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def words(self) -> list[w.Word]:
        return [x.syllables for x in self.elements]


@dataclass(frozen=True)
class BallIndex:
    """The ball B_R as concatenated spheres 0..R, with per-sphere offsets."""

    radius: int
    elements: tuple[GroupElement, ...]
    position: dict[GroupElement, int] = field(repr=False)
    offsets: tuple[int, ...]  # offsets[k] = index of the first element of S_k

    def __len__(self) -> int:
        return len(self.elements)

    def words(self) -> list[w.Word]:
        return [x.syllables for x in self.elements]

    def sphere_slice(self, k: int) -> slice:
        end = self.offsets[k + 1] if k + 1 < len(self.offsets) else len(self.elements)
        return slice(self.offsets[k], end)


@dataclass(frozen=True)
class HyperbolicityEstimate:
    """Minimal integer delta satisfying the four-point condition on B_R.

    A lower bound for the group's true hyperbolicity constant; `is_exhaustive`
    records that the reduced (one point fixed at the identity) tuple space was
    fully scanned.
    """

    radius: int
    delta: int
    is_exhaustive: bool


class GroupModel(abc.ABC):
    """Shared interface of the supported group families."""

    kind: str
    descriptor: str

    def __init__(self):
        self._sphere_cache: dict[int, SphereIndex] = {}
        self._ball_cache: dict[int, BallIndex] = {}

    # -- elementary operations -------------------------------------------

    @property
    @abc.abstractmethod
    def kernel_spec(self):
        """Group spec tuple consumed by the batch kernels."""

    @property
    @abc.abstractmethod
    def is_free(self) -> bool: ...

    @property
    def proven_delta(self) -> int | None:
        """Hyperbolicity constant known a priori (0 for free groups), else None."""
        return 0 if self.is_free else None

    @property
    def identity(self) -> GroupElement:
        return IDENTITY

    @abc.abstractmethod
    def validate(self, x: GroupElement) -> None: ...

    @abc.abstractmethod
    def mul(self, x: GroupElement, y: GroupElement) -> GroupElement: ...

    @abc.abstractmethod
    def inv(self, x: GroupElement) -> GroupElement: ...

    @abc.abstractmethod
    def length(self, x: GroupElement) -> int: ...

    @abc.abstractmethod
    def split(self, x: GroupElement, a: int) -> tuple[GroupElement, GroupElement]:
        """Split the canonical geodesic word after its first `a` letters."""

    @abc.abstractmethod
    def sphere_size(self, k: int) -> int: ...

    @abc.abstractmethod
    def _sphere_words(self, k: int) -> Iterable[w.Word]: ...

    def ball_size(self, s: int) -> int:
        return sum(self.sphere_size(k) for k in range(s + 1))

    # -- canonicalization and parsing -------------------------------------

    @abc.abstractmethod
    def canonicalize(self, syllables: Sequence[w.Syllable]) -> GroupElement:
        """Reduce an arbitrary syllable sequence to normal form (validating
        generator indices)."""

    def parse_element(self, s: str) -> GroupElement:
        try:
            raw = w.parse_word(s)
        except ValueError as exc:
            raise InvalidElementError(str(exc)) from None
        return self.canonicalize(raw)

    def format_element(self, x: GroupElement) -> str:
        return w.format_word(x.syllables)

    # -- enumeration -------------------------------------------------------

    def enumerate_sphere(self, k: int, cap: int | None = None) -> SphereIndex:
        if k < 0:
            raise InvalidInputError("sphere radius must be nonnegative")
        limit = resolve_cap(cap)
        size = self.sphere_size(k)
        if size > limit:
            raise ResourceLimitError(
                f"sphere S_{k} of {self.descriptor} has {size} elements, "
                f"exceeding the enumeration cap {limit}",
                cap=limit,
                requested=size,
            )
        cached = self._sphere_cache.get(k)
        if cached is None:
            elements = tuple(GroupElement(word) for word in self._sphere_words(k))
            cached = SphereIndex(
                radius=k,
                elements=elements,
                position={x: i for i, x in enumerate(elements)},
            )
            self._sphere_cache[k] = cached
        return cached

    def enumerate_ball(self, s: int, cap: int | None = None) -> BallIndex:
        if s < 0:
            raise InvalidInputError("ball radius must be nonnegative")
        limit = resolve_cap(cap)
        size = self.ball_size(s)
        if size > limit:
            raise ResourceLimitError(
                f"ball B_{s} of {self.descriptor} has {size} elements, "
                f"exceeding the enumeration cap {limit}",
                cap=limit,
                requested=size,
            )
        cached = self._ball_cache.get(s)
        if cached is None:
            elements: list[GroupElement] = []
            offsets = []
            for k in range(s + 1):
                offsets.append(len(elements))
                elements.extend(self.enumerate_sphere(k, cap=limit).elements)
            elems = tuple(elements)
            cached = BallIndex(
                radius=s,
                elements=elems,
                position={x: i for i, x in enumerate(elems)},
                offsets=tuple(offsets),
            )
            self._ball_cache[s] = cached
        return cached

    # -- identity plumbing --------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupModel) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor!r})"


class FreeGroup(GroupModel):
    """Free group of rank r with the standard symmetric generating set."""

    kind = "free"

    def __init__(self, rank: int):
        if rank < 1:
            raise InvalidInputError("free group rank must be >= 1")
        super().__init__()
        self.rank = int(rank)
        self.descriptor = f"free:{self.rank}"

    @property
    def kernel_spec(self):
        return ("free", self.rank)

    @property
    def is_free(self) -> bool:
        return True

    def validate(self, x: GroupElement) -> None:
        prev = -1
        for syl in x.syllables:
            if not (isinstance(syl, tuple) and len(syl) == 2):
                raise InvalidElementError(f"malformed syllable {syl!r}")
            g, e = syl
            if not (0 <= g < self.rank):
                raise InvalidElementError(
                    f"generator index {g + 1} out of range for {self.descriptor}"
                )
            if e == 0:
                raise InvalidElementError("zero exponent in normal form")
            if g == prev:
                raise InvalidElementError("adjacent syllables share a generator")
            prev = g

    def mul(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return GroupElement(w.free_mul(x.syllables, y.syllables))

    def inv(self, x: GroupElement) -> GroupElement:
        return GroupElement(w.free_inv(x.syllables))

    def length(self, x: GroupElement) -> int:
        return w.free_len(x.syllables)

    def split(self, x: GroupElement, a: int) -> tuple[GroupElement, GroupElement]:
        letters = w.free_letters(x.syllables)
        return (
            GroupElement(w.free_from_letters(letters[:a])),
            GroupElement(w.free_from_letters(letters[a:])),
        )

    def sphere_size(self, k: int) -> int:
        return w.free_sphere_size(self.rank, k)

    def _sphere_words(self, k: int):
        return w.free_sphere_words(self.rank, k)

    def canonicalize(self, syllables: Sequence[w.Syllable]) -> GroupElement:
        word: w.Word = ()
        for g, e in syllables:
            if not (0 <= g < self.rank):
                raise InvalidElementError(
                    f"generator index {g + 1} out of range for {self.descriptor}"
                )
            word = w.free_mul(word, ((g, e),) if e else ())
        return GroupElement(word)


class CyclicFreeProduct(GroupModel):
    """Free product of cyclic groups, generated by all non-identity factor elements."""

    kind = "zfp"

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(m) for m in orders)
        if len(orders) < 2:
            raise InvalidInputError("a cyclic free product needs at least two factors")
        if any(m < 2 for m in orders):
            raise InvalidInputError("all factor orders must be >= 2")
        super().__init__()
        self.orders = orders
        self.descriptor = "zfp:" + ",".join(str(m) for m in orders)

    @property
    def kernel_spec(self):
        return ("zfp", self.orders)

    @property
    def is_free(self) -> bool:
        return False

    def validate(self, x: GroupElement) -> None:
        prev = -1
        for syl in x.syllables:
            if not (isinstance(syl, tuple) and len(syl) == 2):
                raise InvalidElementError(f"malformed syllable {syl!r}")
            g, e = syl
            if not (0 <= g < len(self.orders)):
                raise InvalidElementError(
                    f"factor index {g + 1} out of range for {self.descriptor}"
                )
            if not (1 <= e < self.orders[g]):
                raise InvalidElementError(
                    f"exponent {e} outside canonical range 1..{self.orders[g] - 1}"
                )
            if g == prev:
                raise InvalidElementError("adjacent syllables share a factor")
            prev = g

    def mul(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return GroupElement(w.zfp_mul(self.orders, x.syllables, y.syllables))

    def inv(self, x: GroupElement) -> GroupElement:
        return GroupElement(w.zfp_inv(self.orders, x.syllables))

    def length(self, x: GroupElement) -> int:
        return len(x.syllables)

    def split(self, x: GroupElement, a: int) -> tuple[GroupElement, GroupElement]:
        return GroupElement(x.syllables[:a]), GroupElement(x.syllables[a:])

    def sphere_size(self, k: int) -> int:
        return w.zfp_sphere_size(self.orders, k)

    def _sphere_words(self, k: int):
        return w.zfp_sphere_words(self.orders, k)

    def canonicalize(self, syllables: Sequence[w.Syllable]) -> GroupElement:
        word: w.Word = ()
        for g, e in syllables:
            if not (0 <= g < len(self.orders)):
                raise InvalidElementError(
                    f"factor index {g + 1} out of range for {self.descriptor}"
                )
            e = e % self.orders[g]
            if e:
                word = w.zfp_mul(self.orders, word, ((g, e),))
        return GroupElement(word)


def parse_group(descriptor: str) -> GroupModel:
    """Build a group model from ``free:R`` or ``zfp:M1,M2,...``."""
    s = descriptor.strip()
    head, _, tail = s.partition(":")
    if head == "free" and tail:
        try:
            rank = int(tail)
        except ValueError:
            raise InvalidInputError(f"malformed group descriptor {descriptor!r}") from None
        return FreeGroup(rank)
    if head == "zfp" and tail:
        try:
            orders = [int(p) for p in tail.split(",")]
        except ValueError:
            raise InvalidInputError(f"malformed group descriptor {descriptor!r}") from None
        return CyclicFreeProduct(orders)
    raise InvalidInputError(
        f"unknown group descriptor {descriptor!r} (expected free:R or zfp:M1,M2,...)"
    )


# -- module-level operations (the public verbs) -----------------------------


def word_length(G: GroupModel, x: GroupElement) -> int:
    G.validate(x)
    return G.length(x)


def multiply(G: GroupModel, x: GroupElement, y: GroupElement) -> GroupElement:
    return G.mul(x, y)


def inverse(G: GroupModel, x: GroupElement) -> GroupElement:
    return G.inv(x)


def enumerate_sphere(G: GroupModel, k: int, cap: int | None = None) -> SphereIndex:
    return G.enumerate_sphere(k, cap=cap)


def enumerate_ball(G: GroupModel, s: int, cap: int | None = None) -> BallIndex:
    return G.enumerate_ball(s, cap=cap)


def geodesic_split(
    G: GroupModel, x: GroupElement, a: int, b: int
) -> tuple[GroupElement, GroupElement]:
    """Deterministic factorization x = x1*x2 with len(x1) = a, len(x2) = b.

    The split point is after the first `a` letters of the canonical
    short-lex geodesic word.
    """
    if a < 0 or b < 0 or a + b != G.length(x):
        raise InvalidSplitError(
            f"split lengths {a}+{b} do not match word length {G.length(x)}"
        )
    return G.split(x, a)


def decomposition_multiplicity(
    G: GroupModel, y: GroupElement, i: int, j: int, cap: int | None = None
) -> int:
    """Number of factorizations y = y1*y2 with y1 in S_i and y2 in S_j."""
    if i < 0 or j < 0:
        raise InvalidInputError("sphere radii must be nonnegative")
    sphere = G.enumerate_sphere(i, cap=cap)
    lengths = kernels.left_quotient_lengths(G.kernel_spec, sphere.words(), y.syllables)
    return int(np.count_nonzero(lengths == j))


def distance(G: GroupModel, g: GroupElement, h: GroupElement) -> int:
    """Word-metric distance d(g, h) = len(g * h^-1) (right-invariant)."""
    return G.length(G.mul(g, G.inv(h)))


def _max_four_point_excess(D: np.ndarray, L: np.ndarray, lo: int = 0) -> int:
    """Largest excess of d(x,y)+d(z,e) over max(d(x,z)+d(y,e), d(x,e)+d(y,z))
    with x,y,z ranging over the rows of D (e = the identity row 0)."""
    best = -(10**9)
    Di = D.astype(np.int64, copy=False)
    n = Di.shape[0]
    for x in range(n):
        dx = Di[x]
        e1 = dx[:, None] + L[None, :]
        e2 = dx[None, :] + L[:, None]
        np.maximum(e2, L[x] + Di, out=e2)
        ex = int((e1 - e2).max())
        if ex > best:
            best = ex
    return max(best, lo)


def estimate_delta(G: GroupModel, R: int, cap: int | None = None) -> HyperbolicityEstimate:
    """Minimal integer delta for the four-point condition over B_R tuples.

    One point is fixed at the identity (valid reduction: the condition is
    invariant under the right-translation isometries of the right-invariant
    metric); the remaining three range over B_R.  Distances are exact, via
    normal forms of products up to length 2R.  The result is a lower bound
    for the group's true hyperbolicity constant.
    """
    ball = G.enumerate_ball(R, cap=cap)
    D = kernels.distance_table(G.kernel_spec, ball.words())
    L = D[:, 0].astype(np.int64)  # element 0 of the ball is the identity
    delta = _max_four_point_excess(D, L, lo=0)
    return HyperbolicityEstimate(radius=R, delta=delta, is_exhaustive=True)


def delta_profile(
    G: GroupModel, R: int, cap: int | None = None
) -> list[HyperbolicityEstimate]:
    """estimate_delta for every radius 1..R, reusing one distance table."""
    ball = G.enumerate_ball(R, cap=cap)
    D = kernels.distance_table(G.kernel_spec, ball.words())
    out = []
    for r in range(1, R + 1):
        n = ball.offsets[r + 1] if r + 1 <= R else len(ball.elements)
        sub = D[:n, :n]
        delta = _max_four_point_excess(sub, sub[:, 0].astype(np.int64), lo=0)
        out.append(HyperbolicityEstimate(radius=r, delta=delta, is_exhaustive=True))
    return out
