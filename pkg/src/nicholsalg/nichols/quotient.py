"""Graded basis of the Nichols algebra computed degree by degree.

For a Z^theta-degree alpha with |alpha| >= 1, a polynomial p lies in the
defining ideal I(V) iff D_i(p) does for every i (the skew derivations jointly
separate the quotient).  Hence the component B(V)^alpha embeds into the sum
of the components at alpha - e_i via p -> (D_i p)_i, and once those are known
the degree-alpha component is a plain rank computation.

Words of one degree are processed in decreasing lexicographic order (the
deg-lex order restricted to one homogeneous component), keeping a word when
its image is not in the span of the images of the words processed before it.
The kept words are exactly the quotient's canonical word basis; the Lyndon
ones among them are the PBW generators.  Every word also gets its coordinate
vector in the kept basis, which is what higher degrees consume.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..cyclotomic import CycScalar
from ..freealgebra import BraidingMatrix, NcPoly
from ..words import is_lyndon

_ZERO = CycScalar.from_rational(0)


def words_of_degree(alpha: Sequence[int]) -> list[tuple[int, ...]]:
    """All words with the given letter counts, descending lexicographically."""
    letters = []
    for i, k in enumerate(alpha, start=1):
        letters += [i] * k
    n = len(letters)
    out = []
    # positions of each letter kind; standard multiset permutations
    def rec(remaining: list[int], prefix: list[int]):
        if not remaining:
            out.append(tuple(prefix))
            return
        seen = set()
        for idx in range(len(remaining)):
            a = remaining[idx]
            if a in seen:
                continue
            seen.add(a)
            rec(remaining[:idx] + remaining[idx + 1:], prefix + [a])
    rec(sorted(letters), [])
    out.sort(reverse=True)
    return out


class GradedQuotient:
    """Degree-indexed survivor bases and coordinates for one braiding."""

    def __init__(self, B: BraidingMatrix):
        self.B = B
        self.theta = B.theta
        # degree -> (survivors list, coords dict word -> tuple of scalars)
        self._data: dict[tuple[int, ...], tuple[list, dict]] = {}
        zero_deg = (0,) * self.theta
        self._data[zero_deg] = ([()], {(): (CycScalar.from_rational(1),)})

    # -- degree computation -------------------------------------------------

    def ensure(self, alpha: Sequence[int]) -> None:
        alpha = tuple(alpha)
        if alpha in self._data:
            return
        # make sure all the lower degrees exist first (lexicographic cascade)
        pending = [alpha]
        order = []
        seen = {alpha}
        while pending:
            d = pending.pop()
            order.append(d)
            for i in range(self.theta):
                if d[i] > 0:
                    lower = d[:i] + (d[i] - 1,) + d[i + 1:]
                    if lower not in self._data and lower not in seen:
                        seen.add(lower)
                        pending.append(lower)
        for d in sorted(order, key=sum):
            if d not in self._data:
                self._compute_degree(d)

    def _compute_degree(self, alpha: tuple[int, ...]) -> None:
        th = self.theta
        B = self.B
        lowers = []
        offsets = []
        total = 0
        for i in range(th):
            if alpha[i] > 0:
                lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
                survivors_low, _ = self._data[lower]
                lowers.append((i + 1, lower))
                offsets.append(total)
                total += len(survivors_low)
        words = words_of_degree(alpha)
        survivors: list[tuple[int, ...]] = []
        coords: dict = {}
        # echelon rows: (pivot index, vector, combo over survivors)
        echelon: list[tuple[int, list, list]] = []
        for w in words:
            vec = self._image_vector(w, lowers, offsets, total)
            combo = [_ZERO] * len(survivors)
            for piv, rvec, rcombo in echelon:
                c = vec[piv]
                if not c.is_zero():
                    for t in range(total):
                        if not rvec[t].is_zero():
                            vec[t] = vec[t] - c * rvec[t]
                    for t in range(len(rcombo)):
                        if not rcombo[t].is_zero():
                            combo[t] = combo[t] - c * rcombo[t]
            piv = next((t for t in range(total) if not vec[t].is_zero()), None)
            if piv is None:
                # vec = image(w) + sum(combo * image(s)) reduced to zero
                coords[w] = tuple(_ZERO - c for c in combo)
            else:
                inv = vec[piv].inverse()
                nvec = [x * inv for x in vec]
                ncombo = [x * inv for x in combo]
                # image(w) appears with coefficient 1 in its own combo
                for row_i in range(len(echelon)):
                    echelon[row_i][2].append(_ZERO)
                ncombo.append(inv)
                echelon.append((piv, nvec, ncombo))
                survivors.append(w)
                coords[w] = tuple(
                    CycScalar.from_rational(1) if s == len(survivors) - 1 else _ZERO
                    for s in range(len(survivors))
                )
        # pad earlier coordinate vectors to the final basis size
        d = len(survivors)
        for w, c in coords.items():
            if len(c) < d:
                coords[w] = c + (_ZERO,) * (d - len(c))
        self._data[alpha] = (survivors, coords)

    def _image_vector(self, w, lowers, offsets, total):
        """Concatenated coordinates of D_i(w) in the lower survivor bases."""
        B = self.B
        vec = [_ZERO] * total
        for (letter, lower), off in zip(lowers, offsets):
            _, coords_low = self._data[lower]
            dim_low = len(self._data[lower][0])
            # D_letter(w): sum over positions of letter with chi weights
            n = len(w)
            exp_row = B._exp[letter - 1]
            for pos in range(n):
                if w[pos] != letter:
                    continue
                e = 0
                for t in range(pos + 1, n):
                    e += exp_row[w[t] - 1]
                weight = B._powers[e % B.conductor]
                cvec = coords_low[w[:pos] + w[pos + 1:]]
                for t in range(dim_low):
                    c = cvec[t]
                    if not c.is_zero():
                        vec[off + t] = vec[off + t] + weight * c
        return vec

    # -- public queries -------------------------------------------------------

    def dim(self, alpha: Sequence[int]) -> int:
        alpha = tuple(alpha)
        self.ensure(alpha)
        return len(self._data[alpha][0])

    def survivors(self, alpha: Sequence[int]) -> list[tuple[int, ...]]:
        alpha = tuple(alpha)
        self.ensure(alpha)
        return list(self._data[alpha][0])

    def lyndon_survivors(self, alpha: Sequence[int]) -> list[tuple[int, ...]]:
        return [w for w in self.survivors(alpha) if is_lyndon(w)]

    def coords_word(self, w: Sequence[int]) -> tuple:
        w = tuple(w)
        alpha = self._degree(w)
        self.ensure(alpha)
        return self._data[alpha][1][w]

    def _degree(self, w) -> tuple[int, ...]:
        d = [0] * self.theta
        for a in w:
            d[a - 1] += 1
        return tuple(d)

    def reduce_poly(self, p: NcPoly) -> dict[tuple[int, ...], tuple]:
        """Coordinates of p's image, per Z^theta-degree, in the survivor bases."""
        out: dict = {}
        for w, c in p.terms.items():
            alpha = self._degree(w)
            self.ensure(alpha)
            survivors, coords = self._data[alpha]
            acc = out.get(alpha)
            if acc is None:
                acc = [_ZERO] * len(survivors)
                out[alpha] = acc
            cvec = coords[w]
            for t in range(len(survivors)):
                x = cvec[t]
                if not x.is_zero():
                    acc[t] = acc[t] + c * x
        return {a: tuple(v) for a, v in out.items()}

    def poly_is_zero(self, p: NcPoly) -> bool:
        """True iff p maps to 0 in the Nichols algebra."""
        return all(all(c.is_zero() for c in vec) for vec in self.reduce_poly(p).values())
