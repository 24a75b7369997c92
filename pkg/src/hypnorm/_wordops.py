"""Syllable-level word arithmetic.

A word is a tuple of ``(generator, exponent)`` syllables in reduced normal
form.  Two families are supported:

* free groups of rank r: generator in ``0..r-1``, exponent any nonzero int,
  adjacent syllables use distinct generators; word length is the sum of
  ``|exponent|``.
* free products of cyclic groups Z/m1 * Z/m2 * ...: generator indexes the
  factor, exponent lies in ``1..m-1``, adjacent syllables use distinct
  factors; every non-identity factor element is a generator, so the word
  length is the syllable count.

The canonical enumeration order is short-lex.  Free-group words compare by
their letter sequence with letter code ``2g`` for a positive power of
generator g and ``2g+1`` for its inverse (so a1 < a1^-1 < a2 < ...); free
products compare syllables by (factor, exponent).  `*_sphere_rank` computes
the position of a word inside its short-lex-ordered sphere arithmetically,
without materializing the sphere; the kernel backends rely on this to build
sparse matrices without dictionary lookups.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Syllable = tuple[int, int]
Word = tuple[Syllable, ...]


# -- free groups --------------------------------------------------------

def free_mul(a: Word, b: Word) -> Word:
    if not a:
        return b
    if not b:
        return a
    out = list(a)
    for g, e in b:
        if out and out[-1][0] == g:
            ee = out[-1][1] + e
            if ee:
                out[-1] = (g, ee)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def free_inv(a: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(a))


def free_len(a: Word) -> int:
    return sum(abs(e) for _, e in a)


def free_letters(a: Word) -> tuple[int, ...]:
    """Letter codes of the canonical geodesic word, in reading order."""
    out = []
    for g, e in a:
        code = 2 * g if e > 0 else 2 * g + 1
        out.extend([code] * abs(e))
    return tuple(out)


def free_from_letters(codes: Sequence[int]) -> Word:
    out: list[Syllable] = []
    for c in codes:
        g = c >> 1
        step = 1 if c % 2 == 0 else -1
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + step)
        else:
            out.append((g, step))
    return tuple(out)


def free_sphere_size(r: int, k: int) -> int:
    if k == 0:
        return 1
    return 2 * r * (2 * r - 1) ** (k - 1)


def free_sphere_rank(r: int, a: Word) -> int:
    """Short-lex position of `a` within its sphere S_{len(a)}."""
    k = free_len(a)
    if k == 0:
        return 0
    q = 2 * r - 1
    rank = 0
    pw = q ** (k - 1)
    prev = -1
    for g, e in a:
        c = 2 * g if e > 0 else 2 * g + 1
        for _ in range(abs(e)):
            if prev < 0:
                pos = c
            else:
                # allowed letters exclude the inverse of the previous one
                pos = c - 1 if c > (prev ^ 1) else c
            rank += pos * pw
            pw = pw // q if q > 1 else 1
            prev = c
    return rank


def free_sphere_words(r: int, k: int) -> Iterator[Word]:
    """All reduced words of length k, in short-lex order."""
    if k == 0:
        yield ()
        return
    codes = list(range(2 * r))
    stack: list[int] = []

    def rec(prev: int) -> Iterator[Word]:
        if len(stack) == k:
            yield free_from_letters(stack)
            return
        for c in codes:
            if prev >= 0 and c == prev ^ 1:
                continue
            stack.append(c)
            yield from rec(c)
            stack.pop()

    yield from rec(-1)


# -- free products of cyclic groups --------------------------------------

def zfp_mul(orders: Sequence[int], a: Word, b: Word) -> Word:
    if not a:
        return b
    if not b:
        return a
    out = list(a)
    for g, e in b:
        if out and out[-1][0] == g:
            ee = (out[-1][1] + e) % orders[g]
            if ee:
                out[-1] = (g, ee)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def zfp_inv(orders: Sequence[int], a: Word) -> Word:
    return tuple((g, orders[g] - e) for g, e in reversed(a))


def zfp_len(a: Word) -> int:
    return len(a)


def zfp_tables(orders: Sequence[int], kmax: int) -> list[list[int]]:
    """N[t][q] = number of length-t completions after a syllable in factor q.

    N[t][len(orders)] counts completions with no predecessor constraint,
    i.e. |S_t|.
    """
    nf = len(orders)
    n = [[1] * (nf + 1)]
    for _ in range(kmax):
        prev = n[-1]
        row = []
        for q in range(nf + 1):
            row.append(sum((orders[p] - 1) * prev[p] for p in range(nf) if p != q))
        n.append(row)
    return n


def zfp_sphere_size(orders: Sequence[int], k: int) -> int:
    return zfp_tables(orders, k)[k][len(orders)]


def zfp_sphere_rank(orders: Sequence[int], a: Word, tables: list[list[int]] | None = None) -> int:
    k = len(a)
    if k == 0:
        return 0
    n = tables if tables is not None else zfp_tables(orders, k)
    rank = 0
    prev = -1
    for t, (g, e) in enumerate(a):
        rem = k - 1 - t
        for q in range(g):
            if q != prev:
                rank += (orders[q] - 1) * n[rem][q]
        rank += (e - 1) * n[rem][g]
        prev = g
    return rank


def zfp_sphere_words(orders: Sequence[int], k: int) -> Iterator[Word]:
    if k == 0:
        yield ()
        return
    nf = len(orders)
    stack: list[Syllable] = []

    def rec(prev: int) -> Iterator[Word]:
        if len(stack) == k:
            yield tuple(stack)
            return
        for q in range(nf):
            if q == prev:
                continue
            for e in range(1, orders[q]):
                stack.append((q, e))
                yield from rec(q)
                stack.pop()

    yield from rec(-1)


# -- serialization --------------------------------------------------------

def format_word(a: Word) -> str:
    """Syllable string, e.g. ``a1^1.a2^-1``; the identity prints as ``e``."""
    if not a:
        return "e"
    return ".".join(f"a{g + 1}^{e}" for g, e in a)


def parse_word(s: str) -> Word:
    """Inverse of :func:`format_word`; raises ValueError on malformed input.

    The result is a raw syllable sequence; group-specific normalization
    (exponent ranges, adjacent-syllable merging) happens in the group model.
    """
    s = s.strip()
    if s in ("", "e"):
        return ()
    out = []
    for part in s.split("."):
        if "^" in part:
            head, _, tail = part.partition("^")
        else:
            head, tail = part, "1"
        if not head.startswith("a"):
            raise ValueError(f"malformed syllable {part!r} in {s!r}")
        try:
            g = int(head[1:])
            e = int(tail)
        except ValueError:
            raise ValueError(f"malformed syllable {part!r} in {s!r}") from None
        if g < 1:
            raise ValueError(f"generator index must be >= 1 in {part!r}")
        out.append((g - 1, e))
    return tuple(out)
