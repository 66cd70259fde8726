"""Cartan integers, matrix reflections, Weyl-groupoid orbits, finite-type
recognition and positive-root enumeration.

Orbit points are deduplicated by generalized Dynkin diagram (vertex labels
q_ii and edge products q_ij q_ji): twist-equivalent matrices carry identical
Cartan data, so this keeps orbits small and finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cyclotomic import CycScalar, q_int
from .freealgebra import BraidingMatrix

#: Largest Cartan integer searched for; finite types never need more than 3.
DEFAULT_CARTAN_CAP = 8

DEFAULT_ORBIT_CAP = 200


class ReflectionUndefined(ValueError):
    """Reflection was requested at a vertex with an undefined Cartan integer."""


class OrbitNotClosed(RuntimeError):
    """Orbit exceeded the cap; standardness is inconclusive."""


def cartan_entry(B: BraidingMatrix, i: int, j: int, cap: int = DEFAULT_CARTAN_CAP) -> int | None:
    """Minimal m with (m+1)_{q_ii} (q_ii^m q_ij q_ji - 1) = 0, scanning to cap.

    Returns None for "undefined <= cap".  m_ii = 2 by convention.
    """
    if i == j:
        return 2
    qii = B.q_entry(i, i)
    edge = B.q_entry(i, j) * B.q_entry(j, i)
    for m in range(cap + 1):
        if ((qii ** m) * edge).is_one():
            return m
        if q_int(m + 1, qii).is_zero():
            return m
    return None


def cartan_matrix(B: BraidingMatrix, cap: int = DEFAULT_CARTAN_CAP) -> list[list[int]] | None:
    """Generalized Cartan matrix a_ij = -m_ij, or None if any m is undefined."""
    th = B.theta
    a = [[2] * th for _ in range(th)]
    for i in range(1, th + 1):
        for j in range(1, th + 1):
            if i == j:
                continue
            m = cartan_entry(B, i, j, cap)
            if m is None:
                return None
            a[i - 1][j - 1] = -m
    return a


def simple_reflection_matrix(m_row: Sequence[int], i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_i on Z^theta: e_j -> e_j + m_ij e_i (j != i), e_i -> -e_i.

    m_row is the i-th row of Cartan integers with m_ii = 2.
    """
    th = len(m_row)
    if m_row[i - 1] != 2:
        raise ValueError("Cartan row must have m_ii = 2")
    rows = []
    for r in range(th):
        row = [0] * th
        if r == i - 1:
            for c in range(th):
                row[c] = -1 if c == i - 1 else m_row[c]
        else:
            row[r] = 1
        rows.append(tuple(row))
    return tuple(rows)


def apply_matrix(M: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(M[r][c] * v[c] for c in range(len(v))) for r in range(len(M)))


def mat_mul(A, Bm):
    n = len(A)
    return tuple(
        tuple(sum(A[r][k] * Bm[k][c] for k in range(n)) for c in range(n))
        for r in range(n)
    )


def reflect(B: BraidingMatrix, i: int, cap: int = DEFAULT_CARTAN_CAP) -> BraidingMatrix:
    """Braiding matrix with respect to the reflected basis s_i.

    New entries are chi(s_i e_j, s_i e_k); the closed formula
    qbar_jk = q_ii^(m_ij m_ik) q_ik^m_ij q_ji^m_ik q_jk is this, spelled out.
    """
    th = B.theta
    m_row = []
    for j in range(1, th + 1):
        m = cartan_entry(B, i, j, cap)
        if m is None:
            raise ReflectionUndefined("reflection undefined at vertex %d (m_%d%d)" % (i, i, j))
        m_row.append(m)
    S = simple_reflection_matrix(m_row, i)
    basis = [apply_matrix(S, tuple(1 if c == r else 0 for c in range(th))) for r in range(th)]
    # basis[j] = s_i(e_j) as a column of coordinates
    cols = list(zip(*S))  # s_i(e_j) = column j
    entries = [
        [B.chi(cols[j], cols[k]) for k in range(th)]
        for j in range(th)
    ]
    return BraidingMatrix(entries)


def diagram_key(B: BraidingMatrix):
    """Hashable generalized-Dynkin-diagram fingerprint (twist class)."""
    th = B.theta
    labels = tuple(B.vertex(i) for i in range(1, th + 1))
    edges = []
    for i in range(1, th + 1):
        for j in range(i + 1, th + 1):
            e = B.edge(i, j)
            if not e.is_one():
                edges.append((i, j, e))
    return labels, tuple(edges)


@dataclass
class GroupoidPoint:
    """A visited point of the Weyl groupoid orbit."""

    braiding: BraidingMatrix
    basis_matrix: tuple[tuple[int, ...], ...]
    m: list[list[int | None]] = field(default_factory=list)
    word: tuple[int, ...] = ()  # reflection sequence from the start point


def _m_matrix(B: BraidingMatrix, cap: int) -> list[list[int | None]]:
    th = B.theta
    return [
        [cartan_entry(B, i, j, cap) for j in range(1, th + 1)]
        for i in range(1, th + 1)
    ]


def weyl_orbit(
    B: BraidingMatrix,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    cap: int = DEFAULT_CARTAN_CAP,
) -> list[GroupoidPoint]:
    """Breadth-first orbit of B under all defined reflections.

    Points are identified up to twist equivalence (diagram equality).  Raises
    OrbitNotClosed when the orbit does not close within orbit_cap points.
    """
    th = B.theta
    ident = tuple(tuple(1 if c == r else 0 for c in range(th)) for r in range(th))
    start = GroupoidPoint(B, ident, _m_matrix(B, cap), ())
    seen = {diagram_key(B)}
    frontier = [start]
    points = [start]
    while frontier:
        nxt = []
        for pt in frontier:
            for i in range(1, th + 1):
                if any(pt.m[i - 1][j] is None for j in range(th)):
                    continue
                Bi = reflect(pt.braiding, i, cap)
                key = diagram_key(Bi)
                if key in seen:
                    continue
                seen.add(key)
                S = simple_reflection_matrix([m for m in pt.m[i - 1]], i)
                newpt = GroupoidPoint(Bi, mat_mul(pt.basis_matrix, S),
                                      _m_matrix(Bi, cap), pt.word + (i,))
                points.append(newpt)
                if len(points) > orbit_cap:
                    raise OrbitNotClosed(
                        "inconclusive: orbit not closed within cap %d" % orbit_cap)
                nxt.append(newpt)
        frontier = nxt
    return points


def is_standard(
    B: BraidingMatrix,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    cap: int = DEFAULT_CARTAN_CAP,
) -> tuple[bool, list[GroupoidPoint]]:
    """Standardness test: all Cartan integers defined and constant on the orbit."""
    base_m = _m_matrix(B, cap)
    if any(e is None for row in base_m for e in row):
        return False, []
    points = weyl_orbit(B, orbit_cap, cap)
    for pt in points:
        if pt.m != base_m:
            return False, points
    return True, points


# -- finite-type recognition ----------------------------------------------


def _chain(n: int, double_at: tuple[int, int] | None = None) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    if double_at:
        i, j = double_at
        a[i][j] = -2
    return a


def _reference_cartan(kind: str, n: int) -> list[list[int]]:
    if kind == "A":
        return _chain(n)
    if kind == "B":
        # double edge at vertex 1: a_12 = -2 (short root first)
        return _chain(n, double_at=(0, 1))
    if kind == "C":
        # double edge at the end: a_{theta-1,theta} = -2
        return _chain(n, double_at=(n - 2, n - 1))
    if kind == "D":
        a = _chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        # fork: vertex theta attaches to theta-2; chain is 1..theta-2,theta-1
        a[n - 3][n - 1] = -1
        a[n - 1][n - 3] = -1
        return a
    if kind == "E":
        # Bourbaki numbering (chain 1-3-4-...-n with 2 on 4), which is what
        # the per-root word tables assume
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in edges:
            a[i - 1][j - 1] = -1
            a[j - 1][i - 1] = -1
        return a
    if kind == "F":
        a = _chain(4)
        a[2][1] = -2  # a_32 = -2: vertices 1,2 long, 3,4 short
        return a
    if kind == "G":
        return [[2, -3], [-1, 2]]
    raise ValueError(kind)


_FINITE_CANDIDATES: list[tuple[str, int]] = (
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(3, 9)]
    + [("D", n) for n in range(4, 9)]
    + [("E", n) for n in (6, 7, 8)]
    + [("F", 4), ("G", 2)]
)


def _components(a: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(a)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and (a[v][w] or a[w][v]):
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _match_relabel(sub, ref) -> tuple[int, ...] | None:
    """Permutation p with sub[p[r]][p[c]] == ref[r][c], by backtracking."""
    n = len(ref)

    def extend(assigned: list[int], used: set[int]) -> tuple[int, ...] | None:
        r = len(assigned)
        if r == n:
            return tuple(assigned)
        for cand in range(n):
            if cand in used:
                continue
            ok = True
            for prev in range(r):
                if (sub[cand][assigned[prev]] != ref[r][prev]
                        or sub[assigned[prev]][cand] != ref[prev][r]):
                    ok = False
                    break
            if ok:
                res = extend(assigned + [cand], used | {cand})
                if res is not None:
                    return res
        return None

    return extend([], set())


@dataclass
class TypeComponent:
    kind: str        # A/B/C/D/E/F/G
    rank: int
    vertices: tuple[int, ...]     # 1-based vertices of the input matrix
    relabel: tuple[int, ...]      # relabel[r] = input vertex playing reference role r+1


def finite_type(a: Sequence[Sequence[int]]) -> list[TypeComponent] | None:
    """Identify each connected component against the finite-type list.

    Returns None when some component is not of finite type.  B2 is preferred
    over C2 and A3 over D3 where the diagrams coincide.
    """
    comps = []
    for comp in _components(a):
        sub = [[a[r][c] for c in comp] for r in comp]
        n = len(comp)
        found = None
        for kind, rank in _FINITE_CANDIDATES:
            if rank != n:
                continue
            perm = _match_relabel(sub, _reference_cartan(kind, rank))
            if perm is not None:
                found = TypeComponent(
                    kind, rank, tuple(v + 1 for v in comp),
                    tuple(comp[p] + 1 for p in perm))
                break
        if found is None:
            return None
        comps.append(found)
    return comps


def positive_roots(a: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """All positive roots of a finite-type Cartan matrix, in the e-basis.

    Closure of the simple roots under the simple reflections, intersected
    with N^theta.  Raises on non-finite type (closure would not terminate).
    """
    if finite_type(a) is None:
        raise ValueError("positive_roots needs a finite-type Cartan matrix")
    th = len(a)
    refls = [simple_reflection_matrix([-a[i][j] if i != j else 2 for j in range(th)], i + 1)
             for i in range(th)]
    roots = {tuple(1 if c == r else 0 for c in range(th)) for r in range(th)}
    frontier = set(roots)
    while frontier:
        nxt = set()
        for v in frontier:
            for S in refls:
                w = apply_matrix(S, v)
                if w not in roots and all(x >= 0 for x in w):
                    if min(w) >= 0 and any(x > 0 for x in w):
                        nxt.add(w)
        roots |= nxt
        frontier = nxt
    return sorted(roots)
