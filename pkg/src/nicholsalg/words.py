"""Lyndon-word combinatorics on the alphabet {1, ..., theta}.

Words are plain tuples of ints; the letter order is the fixed numeration
1 < 2 < ... < theta.  Any alternative vertex numbering is handled by explicit
relabeling in the classification layer, never here.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Word = tuple  # tuple of int letters, 1-based


def degree(word: Sequence[int], theta: int) -> tuple[int, ...]:
    """Letter-count tuple of a word in N^theta."""
    deg = [0] * theta
    for a in word:
        deg[a - 1] += 1
    return tuple(deg)


def is_lyndon(word: Sequence[int]) -> bool:
    """True iff the word is strictly smaller than all its proper suffixes."""
    w = tuple(word)
    if not w:
        raise ValueError("the empty word is not Lyndon")
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_factorization(word: Sequence[int]) -> list[Word]:
    """Unique non-increasing factorization into Lyndon words (Duval)."""
    w = tuple(word)
    if not w:
        raise ValueError("cannot factor the empty word")
    out = []
    k = 0
    n = len(w)
    while k < n:
        i, j = k, k + 1
        while j < n and w[i] <= w[j]:
            i = k if w[i] < w[j] else i + 1
            j += 1
        while k <= i:
            out.append(w[k:k + j - i])
            k += j - i
    return out


def shirshov_decomposition(word: Sequence[int]) -> tuple[Word, Word]:
    """Split a Lyndon word u = vw at its smallest proper nonempty suffix.

    Both halves are Lyndon and v < w.  Chosen by explicit scan: degrees are
    tiny at this scale and the scan is unambiguous.
    """
    w = tuple(word)
    if len(w) < 2 or not is_lyndon(w):
        raise ValueError("Shirshov decomposition needs a Lyndon word of length >= 2")
    best = 1
    for i in range(2, len(w)):
        if w[i:] < w[best:]:
            best = i
    return w[:best], w[best:]


def deg_lex_less(u: Sequence[int], v: Sequence[int]) -> bool:
    """u comes before v in the deg-lex order used for PBW extraction.

    Longer words come first; the empty word is the maximal element.  Within
    one length it is plain lexicographic order.
    """
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return len(u) > len(v)
    return u < v


def enumerate_lyndon(
    theta: int,
    max_len: int,
    degree_box: Sequence[int] | None = None,
) -> list[Word]:
    """All Lyndon words of length <= max_len in lexicographic order.

    Duval's generation algorithm.  With degree_box, only words whose letter
    counts fit coordinatewise inside the box are kept.
    """
    if theta < 1 or max_len < 1:
        raise ValueError("need theta >= 1 and max_len >= 1")
    out = []
    for w in _duval_iter(theta, max_len):
        if degree_box is not None:
            d = degree(w, theta)
            if any(a > b for a, b in zip(d, degree_box)):
                continue
        out.append(w)
    return out


def _duval_iter(theta: int, max_len: int) -> Iterator[Word]:
    w = [1]
    while True:
        yield tuple(w)
        # extend periodically, then increment the last letter
        w = [w[i % len(w)] for i in range(max_len)]
        while w and w[-1] == theta:
            w.pop()
        if not w:
            return
        w[-1] += 1
