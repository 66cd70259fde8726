"""Classification of standard braidings against the complete family lists.

A braiding is matched by (1) computing its Cartan matrix and finite type,
(2) running the Weyl-groupoid standardness test, and (3) regenerating the
candidate family templates and comparing generalized Dynkin diagrams.  The
family templates (chains with -1 marks, the three B shapes, the four G2
shapes) are also what enumerate_standard emits, so classification and
enumeration round-trip by construction.

Vertex conventions: B_theta is numbered with the double edge at vertex 1,
types A/C/D/E/F/G follow the reference diagrams in weyl._reference_cartan.
The relabeling from input numbering to reference numbering is recorded on
the classification record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .cyclotomic import CycScalar, mult_order, root_of_unity, ONE
from .freealgebra import BraidingMatrix
from .weyl import (
    OrbitNotClosed,
    cartan_entry,
    cartan_matrix,
    diagram_key,
    finite_type,
    is_standard,
    _components,
)

_MINUS_ONE = CycScalar.from_rational(-1)


@dataclass(frozen=True)
class DynkinDiagram:
    """Vertex labels q_ii and edge labels q_ij q_ji (edges only when != 1)."""

    labels: tuple
    edges: tuple  # ((i, j, scalar), ...) with i < j, 1-based


def dynkin_diagram(B: BraidingMatrix) -> DynkinDiagram:
    labels, edges = diagram_key(B)
    return DynkinDiagram(labels, edges)


def twist_equivalent(B1: BraidingMatrix, B2: BraidingMatrix, graph_iso: bool = False) -> bool:
    """Same generalized Dynkin diagram; with graph_iso, up to vertex relabeling."""
    if B1.theta != B2.theta:
        return False
    if diagram_key(B1) == diagram_key(B2):
        return True
    if not graph_iso:
        return False
    th = B1.theta
    d2 = dynkin_diagram(B2)
    e2 = {frozenset(e[:2]): e[2] for e in d2.edges}
    d1 = dynkin_diagram(B1)
    e1 = {frozenset(e[:2]): e[2] for e in d1.edges}
    from itertools import permutations
    for perm in permutations(range(1, th + 1)):
        if all(d1.labels[i] == d2.labels[perm[i] - 1] for i in range(th)):
            m1 = {frozenset((perm[i - 1], perm[j - 1])): v
                  for (i, j), v in ((tuple(sorted(k)), v) for k, v in e1.items())}
            if m1 == e2:
                return True
    return False


@dataclass
class StandardClass:
    """Tagged classification record."""

    family: str                    # cartan | A | B_a | B_b | B_c | G2_a | G2_b
    #                              # | not_standard | disconnected
    theta: int = 0
    cartan_type: str | None = None   # e.g. "A3", "B2", "G2"
    q: CycScalar | None = None
    zeta: CycScalar | None = None
    i_list: tuple[int, ...] = ()
    variant: str | None = None       # G2_b: "i" | "ii" | "iii"
    reason: str | None = None        # for not_standard
    relabel: tuple[int, ...] | None = None  # reference role -> input vertex
    components: list["StandardClass"] | None = None
    component_vertices: list[tuple[int, ...]] | None = None

    def is_standard_class(self) -> bool:
        if self.family == "not_standard":
            return False
        if self.family == "disconnected":
            return all(c.is_standard_class() for c in self.components or [])
        return True


# -- template builders ------------------------------------------------------


def chain_template(theta: int, q: CycScalar, marks: Sequence[int]) -> tuple[list, dict]:
    """Labels/edges of the -1-marked chain family on vertices 1..theta.

    Unmarked labels alternate between q^{-1} and q across marks, anchored so
    that vertices above all marks carry q^{-1}; edges carry the inverse of the
    adjacent unmarked label (matching e.g. the marked chain -1 --q-- q^{-1}).
    """
    marks = set(marks)
    labels = [None] * (theta + 1)  # 1-based
    c_above = [0] * (theta + 2)
    for v in range(theta, 0, -1):
        c_above[v] = c_above[v + 1] + (1 if (v + 1) in marks else 0)
    # c_above[v] = number of marks strictly above v
    for v in range(1, theta + 1):
        if v in marks:
            labels[v] = _MINUS_ONE
        else:
            labels[v] = q ** (-((-1) ** c_above[v]))
    edges = {}
    for v in range(1, theta):
        if v not in marks:
            e = q ** ((-1) ** c_above[v])
        elif (v + 1) not in marks:
            e = q ** ((-1) ** c_above[v + 1])
        else:
            e = q ** ((-1) ** c_above[v])
        edges[(v, v + 1)] = e
    return labels, edges


def _chain_template_bottom(theta_chain: int, p: CycScalar, marks: Sequence[int], offset: int) -> tuple[dict, dict]:
    """Chain labels/edges on vertices offset+1 .. offset+theta_chain, anchored
    so the bottom unmarked segment carries p (the orientation forced when the
    chain is glued onto a short vertex)."""
    marks = set(marks)
    labels, edges = {}, {}
    seen = 0
    sign_at = {}
    for v in range(offset + 1, offset + theta_chain + 1):
        if v in marks:
            seen += 1
        sign_at[v] = (-1) ** seen
    for v in range(offset + 1, offset + theta_chain + 1):
        labels[v] = _MINUS_ONE if v in marks else p ** sign_at[v]
    for v in range(offset + 1, offset + theta_chain):
        if v not in marks:
            e = p ** (-sign_at[v])
        elif (v + 1) not in marks:
            e = p ** (-sign_at[v + 1])
        else:
            e = p ** (-sign_at[v])
        edges[(v, v + 1)] = e
    return labels, edges


def family_diagram(cls: StandardClass) -> tuple[list, dict]:
    """Labels (1-based list) and edges for a family record, reference numbering."""
    th = cls.theta
    if cls.family == "A":
        labels, edges = chain_template(th, cls.q, cls.i_list)
        return labels, edges
    if cls.family == "B_a":
        labels = [None, cls.zeta, cls.q]
        return labels, {(1, 2): cls.q.inverse()}
    if cls.family == "B_b":
        labels = [None, cls.q] + [None] * (th - 1)
        edges = {(1, 2): cls.q ** (-2)}
        lab2, ed2 = _chain_template_bottom(th - 1, cls.q ** 2, cls.i_list, offset=1)
        for v, l in lab2.items():
            labels[v] = l
        edges.update(ed2)
        return labels, edges
    if cls.family == "B_c":
        labels = [None, cls.zeta] + [None] * (th - 1)
        edges = {(1, 2): _MINUS_ONE * cls.zeta}
        p = _MINUS_ONE * cls.zeta.inverse()
        lab2, ed2 = _chain_template_bottom(th - 1, p, cls.i_list, offset=1)
        for v, l in lab2.items():
            labels[v] = l
        edges.update(ed2)
        return labels, edges
    if cls.family == "G2_a":
        return [None, cls.q, cls.q ** 3], {(1, 2): cls.q ** (-3)}
    if cls.family == "G2_b":
        z = cls.zeta
        if cls.variant == "i":
            return [None, z ** 2, z.inverse()], {(1, 2): z}
        if cls.variant == "ii":
            return [None, z ** 2, _MINUS_ONE], {(1, 2): z ** 3}
        if cls.variant == "iii":
            return [None, z, _MINUS_ONE], {(1, 2): z ** 5}
    raise ValueError("no diagram template for family %r" % (cls.family,))


def _sqrt_root_of_unity(x: CycScalar) -> CycScalar:
    d = mult_order(x)
    if d is None:
        raise ValueError("need a root of unity")
    if d % 2 == 1:
        return x ** ((d + 1) // 2)
    z = root_of_unity(2 * d)
    for k in range(1, 2 * d, 2):
        y = z ** k
        if y * y == x:
            return y
    raise AssertionError("square root search failed")


def braiding_from_diagram(labels: Sequence, edges: dict) -> BraidingMatrix:
    """Symmetric-matrix representative with the given diagram."""
    th = len(labels) - 1
    entries = [[ONE] * th for _ in range(th)]
    for i in range(1, th + 1):
        entries[i - 1][i - 1] = labels[i]
    for (i, j), e in edges.items():
        s = _sqrt_root_of_unity(e)
        entries[i - 1][j - 1] = s
        entries[j - 1][i - 1] = s
    return BraidingMatrix(entries)


def class_matrix(cls: StandardClass) -> BraidingMatrix:
    labels, edges = family_diagram(cls)
    return braiding_from_diagram(labels, edges)


# -- enumeration -------------------------------------------------------------


def _sortable_scalar(x: CycScalar):
    r = x.reduced()
    return (r.n, r.num, r.den)


def galois_conjugate(x: CycScalar, k: int) -> CycScalar:
    """Image of x under zeta_n -> zeta_n^k (k coprime to the conductor)."""
    from .cyclotomic import _power_row, euler_phi

    phi = euler_phi(x.n)
    out = [0] * phi
    for j, c in enumerate(x.num):
        if c:
            row = _power_row(x.n, (k * j) % x.n)
            for t in range(phi):
                out[t] += c * row[t]
    return CycScalar(x.n, tuple(out), x.den)


def _family_key(labels: list, edges: dict, theta: int, reversible: bool):
    """Dedup fingerprint: diagram up to Galois conjugation (and chain reversal
    for type A, whose diagram has the flip automorphism)."""
    from math import gcd
    variants = [(labels[1:], dict(edges))]
    if reversible:
        rl = list(reversed(labels[1:]))
        re = {(theta - j + 1, theta - i + 1): v for (i, j), v in edges.items()}
        variants.append((rl, re))
    conductor = 1
    for x in list(labels[1:]) + list(edges.values()):
        r = x.reduced()
        conductor = conductor * r.n // gcd(conductor, r.n)
    best = None
    for labs, eds in variants:
        for k in range(1, conductor + 1):
            if gcd(k, conductor) != 1:
                continue
            key = (
                tuple(_sortable_scalar(galois_conjugate(x, k)) for x in labs),
                tuple(sorted((i, j, _sortable_scalar(galois_conjugate(v, k)))
                             for (i, j), v in eds.items())),
            )
            if best is None or key < best:
                best = key
    return best


def enumerate_standard(family: str, theta: int, conductor: int) -> list[tuple[StandardClass, BraidingMatrix]]:
    """One symmetric representative per twist class of the requested family.

    Classes are deduplicated by generalized Dynkin diagram, taken up to Galois
    conjugation of the scalars and, for the chain family, up to the diagram
    flip (so C(2,q;1) and its mirror C(2,q^{-1};2) count once).  Incompatible
    parameters yield an empty list.
    """
    out: list[tuple[StandardClass, BraidingMatrix]] = []
    seen = set()

    def push(cls: StandardClass):
        try:
            labels, edges = family_diagram(cls)
            Bm = class_matrix(cls)
        except ValueError:
            return
        key = _family_key(labels, edges, cls.theta, reversible=(cls.family == "A"))
        if key in seen:
            return
        seen.add(key)
        out.append((cls, Bm))

    if family == "A":
        if conductor < 2:
            return []
        q = root_of_unity(conductor)
        if theta == 1:
            push(StandardClass("A", 1, "A1", q=q, i_list=()))
            return out
        for j in range(theta + 1):
            for marks in combinations(range(1, theta + 1), j):
                push(StandardClass("A", theta, "A%d" % theta, q=q, i_list=marks))
    elif family == "B":
        if theta < 2:
            return []
        ct = "B%d" % theta
        if theta == 2 and conductor >= 4:
            push(StandardClass("B_a", 2, ct, q=root_of_unity(conductor),
                               zeta=root_of_unity(3)))
        if conductor >= 3:
            q = root_of_unity(conductor)
            for j in range(theta):
                for marks in combinations(range(2, theta + 1), j):
                    push(StandardClass("B_b", theta, ct, q=q, i_list=marks))
        if conductor == 3:
            z = root_of_unity(3)
            for j in range(theta):
                for marks in combinations(range(2, theta + 1), j):
                    push(StandardClass("B_c", theta, ct, zeta=z, i_list=marks))
    elif family == "G":
        if theta != 2:
            return []
        if conductor >= 4 and conductor != 8:
            push(StandardClass("G2_a", 2, "G2", q=root_of_unity(conductor)))
        if conductor == 8:
            push(StandardClass("G2_a", 2, "G2", q=root_of_unity(8)))
            z = root_of_unity(8)
            for variant in ("i", "ii", "iii"):
                push(StandardClass("G2_b", 2, "G2", zeta=z, variant=variant))
    else:
        raise ValueError("family must be A, B or G, got %r" % (family,))
    return out


# -- classification -----------------------------------------------------------


def _sub_braiding(B: BraidingMatrix, vertices: Sequence[int]) -> BraidingMatrix:
    return BraidingMatrix([[B.q_entry(i, j) for j in vertices] for i in vertices])


def _relabeled_diagram(B: BraidingMatrix, relabel: Sequence[int]) -> tuple[list, dict]:
    """Diagram of B with reference vertex r carrying input vertex relabel[r-1]."""
    th = len(relabel)
    labels = [None] + [B.vertex(relabel[r]) for r in range(th)]
    edges = {}
    for a in range(1, th + 1):
        for b in range(a + 1, th + 1):
            e = B.edge(relabel[a - 1], relabel[b - 1])
            if not e.is_one():
                edges[(a, b)] = e
    return labels, edges


def _diagrams_equal(d1: tuple[list, dict], d2: tuple[list, dict]) -> bool:
    l1, e1 = d1
    l2, e2 = d2
    return l1[1:] == l2[1:] and {k: v for k, v in e1.items()} == {k: v for k, v in e2.items()}


def _is_cartan_type(B: BraidingMatrix, cap: int = 8) -> bool:
    th = B.theta
    for i in range(1, th + 1):
        for j in range(1, th + 1):
            if i == j:
                continue
            m = cartan_entry(B, i, j, cap)
            if m is None:
                return False
            if not ((B.vertex(i) ** m) * B.edge(i, j)).is_one():
                return False
    return True


def _primitive_roots(n: int) -> list[CycScalar]:
    from math import gcd
    return [root_of_unity(n, k) for k in range(1, n + 1) if gcd(k, n) == 1] or [ONE]


def classify_standard(B: BraidingMatrix, orbit_cap: int = 200, cap: int = 8) -> StandardClass:
    """Match a braiding against the complete standard-family lists."""
    th = B.theta
    for i in range(1, th + 1):
        if B.vertex(i).is_one():
            return StandardClass("not_standard", th,
                                 reason="vertex %d has q_ii = 1 (infinite height)" % i)
        if mult_order(B.vertex(i)) is None:
            return StandardClass("not_standard", th,
                                 reason="vertex %d label is not a root of unity" % i)
    a = cartan_matrix(B, cap)
    if a is None:
        return StandardClass("not_standard", th,
                             reason="some Cartan integer is undefined below the cap")
    comps = _components(a)
    if len(comps) > 1:
        parts, verts = [], []
        for comp in comps:
            vs = tuple(v + 1 for v in comp)
            parts.append(classify_standard(_sub_braiding(B, vs), orbit_cap, cap))
            verts.append(vs)
        return StandardClass("disconnected", th, components=parts,
                             component_vertices=verts)
    tcs = finite_type(a)
    if tcs is None:
        return StandardClass("not_standard", th,
                             reason="Cartan matrix is not of finite type")
    tc = tcs[0]
    try:
        ok, _orbit = is_standard(B, orbit_cap, cap)
    except OrbitNotClosed as e:
        return StandardClass("not_standard", th, reason=str(e))
    if not ok:
        return StandardClass("not_standard", th, cartan_type="%s%d" % (tc.kind, tc.rank),
                             reason="Cartan integers are not constant on the Weyl orbit")

    ct = "%s%d" % (tc.kind, tc.rank)
    relabels = [tc.relabel]
    if tc.kind == "A" and tc.rank > 1:
        relabels.append(tuple(reversed(tc.relabel)))

    if _is_cartan_type(B, cap):
        q = _cartan_parameter(B, tc)
        return StandardClass("cartan", th, ct, q=q, relabel=tc.relabel)

    if tc.kind in ("C", "D", "E", "F"):
        # Prop solocartan: standard C/D/E/F must be Cartan; we just failed that.
        return StandardClass("not_standard", th, cartan_type=ct,
                             reason="type %s braiding is not of Cartan type" % ct)

    for relabel in relabels:
        diag = _relabeled_diagram(B, relabel)
        hit = _match_family(tc.kind, th, diag)
        if hit is not None:
            hit.relabel = relabel
            return hit
    return StandardClass("not_standard", th, cartan_type=ct,
                         reason="no family template matched (unexpected)")


def _cartan_parameter(B: BraidingMatrix, tc) -> CycScalar:
    # the label whose order is the N of the dimension formulas:
    # short-root vertex for B/C/F/G (reference vertices 1, 1, 3, 1), any for ADE
    ref_vertex = {"B": 1, "C": 1, "F": 3, "G": 1}.get(tc.kind, 1)
    return B.vertex(tc.relabel[ref_vertex - 1])


def _match_family(kind: str, theta: int, diag: tuple[list, dict]) -> StandardClass | None:
    labels, edges = diag
    marks = tuple(v for v in range(1, theta + 1) if labels[v] == _MINUS_ONE)

    def try_cls(cls: StandardClass) -> StandardClass | None:
        try:
            if _diagrams_equal(family_diagram(cls), diag):
                return cls
        except ValueError:
            pass
        return None

    if kind == "A":
        cands = set()
        for v in range(1, theta + 1):
            if v not in marks:
                cands.add(labels[v])
                cands.add(labels[v].inverse())
        for e in edges.values():
            cands.add(e)
            cands.add(e.inverse())
        chain_marks = tuple(m for m in marks)
        for q in cands:
            hit = try_cls(StandardClass("A", theta, "A%d" % theta, q=q, i_list=chain_marks))
            if hit:
                return hit
        return None

    if kind == "B":
        chain_marks = tuple(m for m in marks if m >= 2)
        v1 = labels[1]
        o1 = mult_order(v1)
        if theta == 2 and o1 == 3:
            q2 = labels[2]
            if q2 != _MINUS_ONE and mult_order(q2) is not None and mult_order(q2) >= 4:
                hit = try_cls(StandardClass("B_a", 2, "B2", q=q2, zeta=v1))
                if hit:
                    return hit
        if o1 is not None and o1 >= 3:
            hit = try_cls(StandardClass("B_b", theta, "B%d" % theta, q=v1, i_list=chain_marks))
            if hit:
                return hit
        if o1 == 3:
            hit = try_cls(StandardClass("B_c", theta, "B%d" % theta, zeta=v1, i_list=chain_marks))
            if hit:
                return hit
        return None

    if kind == "G":
        for z in _primitive_roots(8):
            for variant in ("i", "ii", "iii"):
                hit = try_cls(StandardClass("G2_b", 2, "G2", zeta=z, variant=variant))
                if hit:
                    return hit
        return None

    return None
