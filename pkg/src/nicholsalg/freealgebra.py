"""The braided tensor algebra T(V) of a diagonal braiding.

A braiding matrix stores theta x theta roots of unity q_ij; the bicharacter
chi on Z^theta x Z^theta is generated bimultiplicatively from them.  Since
every entry is a root of unity we keep an exponent table over one common
conductor, which makes chi a couple of integer multiplications plus a table
lookup.

Noncommutative polynomials (NcPoly) are dicts word -> scalar with no zero
coefficients.  The product is plain concatenation; all braiding lives in the
operations (commutators, coproduct, derivations, bilinear form), as it should.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .cyclotomic import (
    ONE,
    CycScalar,
    mult_order,
    root_of_unity,
)
from .words import Word, degree, is_lyndon, lyndon_factorization, shirshov_decomposition


class BraidingMatrix:
    """theta x theta matrix of roots of unity defining chi(e_i, e_j) = q_ij."""

    def __init__(self, entries: Sequence[Sequence[CycScalar]]):
        theta = len(entries)
        if any(len(row) != theta for row in entries):
            raise ValueError("braiding matrix must be square")
        self.theta = theta
        self.q = tuple(tuple(row) for row in entries)
        orders = []
        for row in self.q:
            for x in row:
                o = mult_order(x)
                if o is None:
                    raise ValueError("braiding entries must be roots of unity: %r" % (x,))
                orders.append(o)
        lcm = 1
        for o in orders:
            from math import gcd
            lcm = lcm * o // gcd(lcm, o)
        self.conductor = lcm
        self._powers = [root_of_unity(lcm, k) for k in range(lcm)]
        # q_ij = zeta_lcm ** exp[i][j]
        self._exp = []
        for row in self.q:
            er = []
            for x in row:
                er.append(self._discrete_log(x))
            self._exp.append(tuple(er))
        self._exp = tuple(self._exp)
        # canonicalize entries at the common conductor
        self.q = tuple(tuple(self._powers[e] for e in row) for row in self._exp)
        self._chi_cache: dict = {}

    def _discrete_log(self, x: CycScalar) -> int:
        for k, p in enumerate(self._powers):
            if p == x:
                return k
        raise ValueError("not a power of the common root: %r" % (x,))

    @staticmethod
    def from_exponents(theta: int, conductor: int, exps: Sequence[Sequence[int]]) -> "BraidingMatrix":
        return BraidingMatrix(
            [[root_of_unity(conductor, exps[i][j]) for j in range(theta)] for i in range(theta)]
        )

    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return self._exp

    def chi(self, alpha: Sequence[int], beta: Sequence[int]) -> CycScalar:
        """chi(alpha, beta) = prod q_ij^(alpha_i beta_j); alpha, beta in Z^theta."""
        key = (tuple(alpha), tuple(beta))
        hit = self._chi_cache.get(key)
        if hit is not None:
            return hit
        e = 0
        for i, a in enumerate(alpha):
            if a:
                row = self._exp[i]
                for j, b in enumerate(beta):
                    if b:
                        e += a * b * row[j]
        val = self._powers[e % self.conductor]
        self._chi_cache[key] = val
        return val

    def chi_letter(self, i: int, beta: Sequence[int]) -> CycScalar:
        """chi(e_i, beta) for a 1-based letter i."""
        row = self._exp[i - 1]
        e = 0
        for j, b in enumerate(beta):
            if b:
                e += b * row[j]
        return self._powers[e % self.conductor]

    def q_entry(self, i: int, j: int) -> CycScalar:
        return self.q[i - 1][j - 1]

    def edge(self, i: int, j: int) -> CycScalar:
        """q_ij * q_ji, the generalized Dynkin edge label."""
        return self._powers[(self._exp[i - 1][j - 1] + self._exp[j - 1][i - 1]) % self.conductor]

    def vertex(self, i: int) -> CycScalar:
        return self.q[i - 1][i - 1]

    def __eq__(self, other):
        return isinstance(other, BraidingMatrix) and self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __repr__(self):
        return "BraidingMatrix(theta=%d, conductor=%d, exp=%r)" % (
            self.theta, self.conductor, self._exp)


class NcPoly:
    """Z^theta-graded noncommutative polynomial: dict word -> nonzero scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, CycScalar] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    t[tuple(w)] = c
        self.terms = t

    @staticmethod
    def zero() -> "NcPoly":
        return NcPoly()

    @staticmethod
    def unit(coeff: CycScalar = ONE) -> "NcPoly":
        return NcPoly({(): coeff})

    @staticmethod
    def generator(i: int, coeff: CycScalar = ONE) -> "NcPoly":
        return NcPoly({(i,): coeff})

    @staticmethod
    def from_word(w: Sequence[int], coeff: CycScalar = ONE) -> "NcPoly":
        return NcPoly({tuple(w): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NcPoly") -> "NcPoly":
        t = dict(self.terms)
        for w, c in other.terms.items():
            cur = t.get(w)
            s = c if cur is None else cur + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        out = NcPoly.__new__(NcPoly)
        out.terms = t
        return out

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + other.scale(_MINUS_ONE)

    def scale(self, c: CycScalar) -> "NcPoly":
        if c.is_zero():
            return NcPoly.zero()
        out = NcPoly.__new__(NcPoly)
        out.terms = {w: v * c for w, v in self.terms.items()}
        return out

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                cur = t.get(w)
                s = c if cur is None else cur + c
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        out = NcPoly.__new__(NcPoly)
        out.terms = t
        return out

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            mono = "".join("x%d" % a for a in w) or "1"
            bits.append("(%r)%s" % (self.terms[w], mono))
        return " + ".join(bits)

    def homogeneous_components(self, theta: int) -> dict[tuple[int, ...], "NcPoly"]:
        comps: dict[tuple[int, ...], dict] = {}
        for w, c in self.terms.items():
            comps.setdefault(degree(w, theta), {})[w] = c
        return {d: NcPoly(t) for d, t in comps.items()}

    def sole_degree(self, theta: int) -> tuple[int, ...]:
        degs = {degree(w, theta) for w in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not Z^theta-homogeneous")
        return degs.pop()


_MINUS_ONE = CycScalar.from_rational(-1)


class TensorPoly:
    """Element of T(V) (x) T(V): dict (word, word) -> nonzero scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Word, Word], CycScalar] | None = None):
        t = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    t[(tuple(k[0]), tuple(k[1]))] = c
        self.terms = t

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        t = dict(self.terms)
        for k, c in other.terms.items():
            cur = t.get(k)
            s = c if cur is None else cur + c
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        out = TensorPoly.__new__(TensorPoly)
        out.terms = t
        return out

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + other.scale(_MINUS_ONE)

    def scale(self, c: CycScalar) -> "TensorPoly":
        if c.is_zero():
            return TensorPoly()
        out = TensorPoly.__new__(TensorPoly)
        out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    def bidegree_component(self, r: int, s: int) -> "TensorPoly":
        """Terms whose sides have N-lengths (r, s)."""
        return TensorPoly({k: c for k, c in self.terms.items()
                           if len(k[0]) == r and len(k[1]) == s})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (u, v) in sorted(self.terms):
            lu = "".join("x%d" % a for a in u) or "1"
            lv = "".join("x%d" % a for a in v) or "1"
            bits.append("(%r)%s(x)%s" % (self.terms[(u, v)], lu, lv))
        return " + ".join(bits)


# -- operations -----------------------------------------------------------


def braided_commutator(B: BraidingMatrix, x: NcPoly, y: NcPoly) -> NcPoly:
    """[x, y]_c = xy - chi(deg x, deg y) yx, extended bilinearly."""
    out = NcPoly.zero()
    for dx, px in x.homogeneous_components(B.theta).items():
        for dy, py in y.homogeneous_components(B.theta).items():
            out = out + px * py - (py * px).scale(B.chi(dx, dy))
    return out


def ad_pow(B: BraidingMatrix, i: int, r: int, j: int) -> NcPoly:
    """(ad_c x_i)^r (x_j)."""
    if i == j:
        raise ValueError("ad power needs distinct letters")
    p = NcPoly.generator(j)
    xi = NcPoly.generator(i)
    for _ in range(r):
        p = braided_commutator(B, xi, p)
    return p


_hyperletter_cache: dict = {}


def hyperletter(B: BraidingMatrix, word: Sequence[int]) -> NcPoly:
    """[u]_c for a Lyndon word u, via its Shirshov decomposition."""
    w = tuple(word)
    key = (id(B), w)
    hit = _hyperletter_cache.get(key)
    if hit is not None:
        return hit
    if len(w) == 1:
        out = NcPoly.generator(w[0])
    else:
        if not is_lyndon(w):
            raise ValueError("hyperletter needs a Lyndon word, got %r" % (w,))
        v, u = shirshov_decomposition(w)
        out = braided_commutator(B, hyperletter(B, v), hyperletter(B, u))
    _hyperletter_cache[key] = out
    return out


def hyperword(B: BraidingMatrix, word: Sequence[int]) -> NcPoly:
    """[u]_c for arbitrary u: product of hyperletters over the Lyndon factors."""
    w = tuple(word)
    if not w:
        return NcPoly.unit()
    out = NcPoly.unit()
    for f in lyndon_factorization(w):
        out = out * hyperletter(B, f)
    return out


def coproduct(B: BraidingMatrix, p: NcPoly) -> TensorPoly:
    """Braided coproduct with Delta(x_i) = x_i (x) 1 + 1 (x) x_i.

    On a word, Delta is the braided unshuffle: for each subset S of positions
    kept on the left, the crossing factor is the product of chi(e_a, e_b) over
    pairs (right-letter a before left-letter b).
    """
    out: dict = {}
    for w, c in p.terms.items():
        for (left, right, f) in _unshuffles(B, w):
            k = (left, right)
            cur = out.get(k)
            s = c * f if cur is None else cur + c * f
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
    t = TensorPoly.__new__(TensorPoly)
    t.terms = out
    return t


def coproduct_component(B: BraidingMatrix, p: NcPoly, r: int, s: int) -> TensorPoly:
    """Delta_{r,s}(p): only the splits with left length r, right length s."""
    out: dict = {}
    for w, c in p.terms.items():
        if len(w) != r + s:
            continue
        for (left, right, f) in _unshuffles(B, w, keep_left=r):
            k = (left, right)
            cur = out.get(k)
            v = c * f if cur is None else cur + c * f
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
    t = TensorPoly.__new__(TensorPoly)
    t.terms = out
    return t


def _unshuffles(B: BraidingMatrix, w: Word, keep_left: int | None = None):
    n = len(w)
    from itertools import combinations
    sizes = range(n + 1) if keep_left is None else (keep_left,)
    for k in sizes:
        for S in combinations(range(n), k):
            in_S = [False] * n
            for s in S:
                in_S[s] = True
            e = 0
            # crossing factor: right-side letter at s passes left-side letter at t > s
            for s in range(n):
                if not in_S[s]:
                    row = B._exp[w[s] - 1]
                    for t in range(s + 1, n):
                        if in_S[t]:
                            e += row[w[t] - 1]
            left = tuple(w[i] for i in S)
            right = tuple(w[i] for i in range(n) if not in_S[i])
            yield left, right, B._powers[e % B.conductor]


def derivation_D(B: BraidingMatrix, i: int, p: NcPoly) -> NcPoly:
    """Skew derivation D_i: coefficient of (.) (x) x_i in Delta_{n-1,1}."""
    out: dict = {}
    for w, c in p.terms.items():
        _word_derivation(B, i, w, c, out, left=False)
    q = NcPoly.__new__(NcPoly)
    q.terms = out
    return q


def derivation_F(B: BraidingMatrix, i: int, p: NcPoly) -> NcPoly:
    """Skew derivation F_i: coefficient of x_i (x) (.) in Delta_{1,n-1}."""
    out: dict = {}
    for w, c in p.terms.items():
        _word_derivation(B, i, w, c, out, left=True)
    q = NcPoly.__new__(NcPoly)
    q.terms = out
    return q


def _word_derivation(B, i, w, c, out, left: bool):
    exp_row = B._exp[i - 1]
    n = len(w)
    for pos in range(n):
        if w[pos] != i:
            continue
        e = 0
        if left:
            for t in range(pos):
                e += B._exp[w[t] - 1][i - 1]
        else:
            for t in range(pos + 1, n):
                e += exp_row[w[t] - 1]
        v = w[:pos] + w[pos + 1:]
        add = c * B._powers[e % B.conductor]
        cur = out.get(v)
        s = add if cur is None else cur + add
        if s.is_zero():
            out.pop(v, None)
        else:
            out[v] = s


def bilinear_form(B: BraidingMatrix, x: NcPoly, y: NcPoly) -> CycScalar:
    """The canonical bilinear form with normalization (x_i | x_i) = 1.

    Words of different Z^theta-degrees pair to zero; on matching degrees the
    value follows the recursion (p | w x_i) = (D_i p | w).
    """
    total = CycScalar.from_rational(0)
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            f = _form_words(B, wx, wy)
            if not f.is_zero():
                total = total + cx * cy * f
    return total


def _form_words(B: BraidingMatrix, u: Word, v: Word) -> CycScalar:
    if len(u) != len(v):
        return _ZERO_SCALAR
    if degree(u, B.theta) != degree(v, B.theta):
        return _ZERO_SCALAR
    cache = _form_cache.setdefault(id(B), {})
    return _form_rec(B, u, v, cache)


def _form_rec(B, u, v, cache) -> CycScalar:
    if not v:
        return ONE if not u else _ZERO_SCALAR
    key = (u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    last = v[-1]
    head = v[:-1]
    out: dict = {}
    _word_derivation(B, last, u, ONE, out, left=False)
    total = _ZERO_SCALAR
    for w, c in out.items():
        f = _form_rec(B, w, head, cache)
        if not f.is_zero():
            total = total + c * f
    cache[key] = total
    return total


_ZERO_SCALAR = CycScalar.from_rational(0)
_form_cache: dict = {}
