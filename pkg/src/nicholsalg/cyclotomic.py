"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Scalars are stored in the power basis 1, z, ..., z^(phi(N)-1) of Q(zeta_N),
reduced modulo the N-th cyclotomic polynomial, as a tuple of integer
numerators over a single positive denominator.  That representation is
canonical once the content gcd is stripped, so equality inside one conductor
is coordinate-wise.  Mixed conductors embed into Q(zeta_lcm) first.

Everything here is pure and immutable; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

#: Largest conductor the engine will touch.  Degrees of Phi_N stay small this
#: way; anything larger is a hard error rather than silent slowness.
MAX_CONDUCTOR = 120


class ConductorError(ValueError):
    """Conductor outside the supported range."""


def _check_conductor(n: int) -> None:
    if n < 1:
        raise ConductorError("conductor must be >= 1, got %r" % (n,))
    if n > MAX_CONDUCTOR:
        raise ConductorError(
            "conductor %d exceeds cap %d" % (n, MAX_CONDUCTOR)
        )


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    ps = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    return tuple(ps)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # exact division of integer polynomials; den is monic here
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - dn] = c
        for j, dj in enumerate(den):
            num[i - dn + j] -= c * dj
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, monic, integral."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    den = [1]
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k is the coordinate vector of z^k mod Phi_n, 0 <= k <= 2*phi-2."""
    phi = euler_phi(n)
    lower = [-c for c in cyclotomic_polynomial(n)[:phi]]  # z^phi = lower(z)
    rows: list[tuple[int, ...]] = []
    for k in range(phi):
        row = [0] * phi
        row[k] = 1
        rows.append(tuple(row))
    for k in range(phi, 2 * phi - 1):
        prev = rows[k - 1]
        shifted = [0] + list(prev[: phi - 1])
        top = prev[phi - 1]
        if top:
            shifted = [s + top * l for s, l in zip(shifted, lower)]
        rows.append(tuple(shifted))
    return tuple(rows)


def _reduce_coeffs(n: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    phi = euler_phi(n)
    rows = _reduction_rows(n)
    out = list(coeffs[:phi]) + [0] * max(0, phi - len(coeffs))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            if k < len(rows):
                row = rows[k]
            else:
                row = _power_row(n, k)
            out = [o + c * r for o, r in zip(out, row)]
    return tuple(out)


@lru_cache(maxsize=None)
def _power_row(n: int, k: int) -> tuple[int, ...]:
    """Coordinates of z^k mod Phi_n for arbitrary k >= 0."""
    k %= n  # z^n = 1
    rows = _reduction_rows(n)
    if k < len(rows):
        return rows[k]
    phi = euler_phi(n)
    lower = [-c for c in cyclotomic_polynomial(n)[:phi]]
    row = list(rows[len(rows) - 1])
    for _ in range(len(rows) - 1, k):
        shifted = [0] + row[: phi - 1]
        top = row[phi - 1]
        if top:
            shifted = [s + top * l for s, l in zip(shifted, lower)]
        row = shifted
    return tuple(row)


def _normalize(num: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    num = tuple(num)
    if den < 0:
        num = tuple(-c for c in num)
        den = -den
    if all(c == 0 for c in num):
        return tuple([0] * len(num)), 1
    if den != 1:
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
    return num, den


class CycScalar:
    """An element of Q(zeta_n) in reduced power-basis coordinates."""

    __slots__ = ("n", "num", "den", "_red", "_hash")

    def __init__(self, n: int, num: Sequence[int], den: int = 1):
        _check_conductor(n)
        phi = euler_phi(n)
        if len(num) != phi:
            num = _reduce_coeffs(n, num)
        num, den = _normalize(num, den)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_red", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CycScalar is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(x) -> "CycScalar":
        f = Fraction(x)
        return CycScalar(1, (f.numerator,), f.denominator)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and all(
            c == 0 for c in self.num[1:]
        )

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("%r is not rational" % (self,))
        return Fraction(self.num[0], self.den)

    # -- conductor handling ---------------------------------------------

    def embed(self, m: int) -> "CycScalar":
        """Rewrite in Q(zeta_m); m must be a multiple of the conductor."""
        if m == self.n:
            return self
        if m % self.n:
            raise ConductorError("cannot embed conductor %d into %d" % (self.n, m))
        _check_conductor(m)
        step = m // self.n
        phi = euler_phi(m)
        out = [0] * phi
        for j, c in enumerate(self.num):
            if c:
                row = _power_row(m, step * j)
                for t in range(phi):
                    out[t] += c * row[t]
        return CycScalar(m, out, self.den)

    def _common(self, other: "CycScalar") -> tuple["CycScalar", "CycScalar"]:
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.embed(m), other.embed(m)

    def reduced(self) -> "CycScalar":
        """Equal scalar at the minimal possible conductor (canonical form)."""
        cached = object.__getattribute__(self, "_red")
        if cached is not None:
            return cached
        x = self
        changed = True
        while changed and x.n > 1:
            changed = False
            for p in prime_factors(x.n):
                down = _demote(x, x.n // p)
                if down is not None:
                    x = down
                    changed = True
                    break
        object.__setattr__(self, "_red", x)
        return x

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        num = tuple(
            x * b.den + y * a.den for x, y in zip(a.num, b.num)
        )
        return CycScalar(a.n, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.n, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        conv = _poly_mul(a.num, b.num)
        return CycScalar(a.n, _reduce_coeffs(a.n, conv), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        phi = euler_phi(self.n)
        # columns of multiplication-by-self in the power basis
        cols = []
        for j in range(phi):
            col = _reduce_coeffs(self.n, [0] * j + list(self.num))
            cols.append([Fraction(c, self.den) for c in col])
        target = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        sol = _solve_exact(cols, target)
        den = 1
        for f in sol:
            den = den * f.denominator // gcd(den, f.denominator)
        return CycScalar(self.n, tuple(int(f * den) for f in sol), den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "CycScalar":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar(self.n, (1,) + (0,) * (euler_phi(self.n) - 1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        a, b = self._common(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            r = self.reduced()
            h = hash((r.n, r.num, r.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        r = self.reduced()
        if r.is_rational():
            f = Fraction(r.num[0], r.den)
            return str(f)
        terms = []
        for j, c in enumerate(r.num):
            if not c:
                continue
            if j == 0:
                terms.append(str(Fraction(c, r.den)))
            else:
                coeff = Fraction(c, r.den)
                mono = "z%d" % r.n if j == 1 else "z%d^%d" % (r.n, j)
                terms.append(mono if coeff == 1 else "%s*%s" % (coeff, mono))
        return " + ".join(terms).replace("+ -", "- ")


def _solve_exact(cols: list[list[Fraction]], target: list[Fraction]):
    """Solve sum_j x_j * cols[j] = target exactly; None if inconsistent."""
    m = len(target)
    k = len(cols)
    aug = [[cols[j][i] for j in range(k)] + [target[i]] for i in range(m)]
    pivots = []
    row = 0
    for col in range(k):
        sel = None
        for r in range(row, m):
            if aug[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        piv = aug[row][col]
        aug[row] = [v / piv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if aug[r][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        sol[col] = aug[r][k]
    return sol


def _demote(x: CycScalar, m: int) -> CycScalar | None:
    """Rewrite x in Q(zeta_m) for m | n, or None if x does not live there."""
    phi_m = euler_phi(m)
    step = x.n // m
    cols = []
    for j in range(phi_m):
        cols.append([Fraction(c) for c in _power_row(x.n, step * j)])
    target = [Fraction(c, x.den) for c in x.num]
    sol = _solve_exact(cols, target)
    if sol is None:
        return None
    den = 1
    for f in sol:
        den = den * f.denominator // gcd(den, f.denominator)
    return CycScalar(m, tuple(int(f * den) for f in sol), den)


# -- public helpers ------------------------------------------------------

ZERO = CycScalar(1, (0,))
ONE = CycScalar(1, (1,))


def root_of_unity(n: int, k: int = 1) -> CycScalar:
    """zeta_n^k in canonical form."""
    _check_conductor(n)
    k %= n
    return CycScalar(n, _power_row(n, k))


def mult_order(x: CycScalar) -> int | None:
    """Multiplicative order of x, or None when x is not a root of unity.

    Returns 1 exactly for x == 1 (the distinguished "is one" outcome: callers
    map it to infinite height).  Torsion of Q(zeta_n)* is mu_lcm(2,n), so only
    divisors of lcm(2, n) need checking.
    """
    if x.is_zero():
        raise ZeroDivisionError("mult_order of zero")
    if x.den != 1:
        return None
    n = x.n
    cap = n if n % 2 == 0 else 2 * n
    for d in divisors(cap):
        if (x ** d).is_one():
            return d
    return None


def q_int(n: int, q: CycScalar) -> CycScalar:
    """(n)_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q-integer needs n >= 0")
    total = ZERO
    p = ONE
    for _ in range(n):
        total = total + p
        p = p * q
    return total


def q_factorial(n: int, q: CycScalar) -> CycScalar:
    out = ONE
    for j in range(1, n + 1):
        out = out * q_int(j, q)
    return out


def q_binomial(n: int, k: int, q: CycScalar) -> CycScalar:
    """Gaussian binomial via the Pascal recursion; valid at roots of unity."""
    if k < 0 or k > n:
        raise ValueError("need 0 <= k <= n, got (%d, %d)" % (n, k))
    # binom(n,k) = binom(n-1,k-1) + q^k * binom(n-1,k), no division anywhere
    row: list[CycScalar] = [ONE]
    for m in range(1, n + 1):
        new = [ONE]
        for j in range(1, m):
            new.append(row[j - 1] + (q ** j) * row[j])
        new.append(ONE)
        row = new
    return row[k]
