"""Lyndon words attached to positive roots, and per-root data.

For a finite Cartan matrix the PBW generator at a positive root alpha is the
hyperletter of one specific Lyndon word.  Those words obey the standard
factorization rule: for non-simple alpha, l_alpha is the lexicographically
largest concatenation l_beta l_gamma over all splittings alpha = beta + gamma
into positive roots with l_beta < l_gamma.  The rule reproduces the closed
per-type tables (chains x_i..x_j for type A, doubled prefixes for B, ...) and
extends uniformly to E8, where no closed list is printed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..cyclotomic import CycScalar, mult_order
from ..freealgebra import BraidingMatrix
from ..weyl import positive_roots


@dataclass
class RootDatum:
    alpha: tuple[int, ...]
    lyndon: tuple[int, ...]
    q_alpha: CycScalar
    height: int | None  # None means infinite (q_alpha = 1)


def standard_lyndon_words(cartan: Sequence[Sequence[int]]) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Lyndon word for every positive root of a finite-type Cartan matrix."""
    roots = positive_roots(cartan)
    rootset = set(roots)
    words: dict[tuple[int, ...], tuple[int, ...]] = {}
    for r in sorted(roots, key=sum):
        if sum(r) == 1:
            words[r] = (r.index(1) + 1,)
            continue
        best = None
        for beta in words:
            gamma = tuple(a - b for a, b in zip(r, beta))
            if gamma in words and words[beta] < words[gamma]:
                cand = words[beta] + words[gamma]
                if best is None or cand > best:
                    best = cand
        if best is None:
            raise AssertionError("no standard factorization for root %r" % (r,))
        words[r] = best
    return words


def root_data(B: BraidingMatrix, cartan: Sequence[Sequence[int]]) -> list[RootDatum]:
    """Per-root scalar q_alpha = chi(alpha, alpha), height and Lyndon word.

    The heights are the orders of the q_alpha; order 1 (q_alpha = 1) maps to
    infinite height.
    """
    words = standard_lyndon_words(cartan)
    out = []
    for alpha, w in sorted(words.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        q = B.chi(alpha, alpha)
        o = mult_order(q)
        out.append(RootDatum(alpha, w, q, None if o in (None, 1) else o))
    return out
