"""The 2-complex X of cut parameters and the cell function f on it.

X has 0-cells p1..p4, 1-cells alpha..delta_bar and 2-cells A..L.  Every
computation here is exact integer arithmetic: boundary matrices, Smith
normal form, boundary certificates, link graphs, and the evaluation of f
on a lattice loop.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import AmbiguousCyclicOrder, DimensionMismatch, NotACycle, NotClosed, OutOfDomain
from .geometry import LatticePath, is_embedded, to_path
from .grammar import Arrangement
from .splitter import SplitWitness, check_witness, find_split

ZERO_CELLS = ("p1", "p2", "p3", "p4")
ONE_CELLS = ("alpha", "beta", "gamma", "delta", "alpha_bar", "beta_bar", "gamma_bar", "delta_bar")
TWO_CELLS = tuple("ABCDEFGHIJKL")

_D1 = {
    "alpha": {"p2": 1, "p1": -1},
    "beta": {"p1": 1, "p2": -1},
    "gamma": {"p3": 1, "p1": -1},
    "delta": {"p1": 1, "p3": -1},
    "alpha_bar": {"p3": 1, "p4": -1},
    "beta_bar": {"p4": 1, "p3": -1},
    "gamma_bar": {"p2": 1, "p4": -1},
    "delta_bar": {"p4": 1, "p2": -1},
}

# signed 1-cell lists, in the order they are written
_D2 = {
    "A": (("beta_bar", 1), ("alpha", -1), ("delta_bar", -1), ("gamma", 1)),
    "B": (("alpha_bar", 1), ("beta", -1), ("gamma", -1), ("delta_bar", 1)),
    "C": (("beta", 1), ("alpha_bar", -1), ("delta", -1), ("gamma_bar", 1)),
    "D": (("alpha", 1), ("beta_bar", -1), ("gamma_bar", -1), ("delta", 1)),
    "E": (("alpha", 1), ("beta", 1)),
    "F": (("beta", 1), ("alpha", 1)),
    "G": (("alpha_bar", 1), ("beta_bar", 1)),
    "H": (("beta_bar", 1), ("alpha_bar", 1)),
    "I": (("gamma", 1), ("delta", 1)),
    "J": (("delta", 1), ("gamma", 1)),
    "K": (("gamma_bar", 1), ("delta_bar", 1)),
    "L": (("delta_bar", 1), ("gamma_bar", 1)),
}


def _mat_mul(a, b):
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in range(rows)]
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@dataclass(frozen=True)
class CellComplexData:
    zero_cells: tuple
    one_cells: tuple
    two_cells: tuple
    d1: tuple  # rows: zero cells, columns: one cells
    d2: tuple  # rows: one cells, columns: two cells
    boundary_lists: dict = field(default_factory=dict, compare=False, repr=False)

    def column(self, matrix: str, cell: str) -> dict:
        if matrix == "d2":
            j = self.two_cells.index(cell)
            return {r: self.d2[i][j] for i, r in enumerate(self.one_cells) if self.d2[i][j]}
        j = self.one_cells.index(cell)
        return {r: self.d1[i][j] for i, r in enumerate(self.zero_cells) if self.d1[i][j]}

    def with_entry(self, matrix: str, row: str, col: str, value: int) -> "CellComplexData":
        """Copy with one matrix entry replaced (for negative tests)."""
        if matrix == "d2":
            i, j = self.one_cells.index(row), self.two_cells.index(col)
            m = [list(r) for r in self.d2]
            m[i][j] = value
            return CellComplexData(self.zero_cells, self.one_cells, self.two_cells, self.d1,
                                   tuple(map(tuple, m)), self.boundary_lists)
        i, j = self.zero_cells.index(row), self.one_cells.index(col)
        m = [list(r) for r in self.d1]
        m[i][j] = value
        return CellComplexData(self.zero_cells, self.one_cells, self.two_cells,
                               tuple(map(tuple, m)), self.d2, self.boundary_lists)

    def to_json(self) -> dict:
        return {
            "zero_cells": list(self.zero_cells),
            "one_cells": list(self.one_cells),
            "two_cells": list(self.two_cells),
            "d1": [list(r) for r in self.d1],
            "d2": [list(r) for r in self.d2],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"


def build_complex() -> CellComplexData:
    d1 = tuple(tuple(_D1[e].get(v, 0) for e in ONE_CELLS) for v in ZERO_CELLS)
    d2 = tuple(
        tuple(dict(_D2[c]).get(e, 0) for c in TWO_CELLS) for e in ONE_CELLS
    )
    return CellComplexData(ZERO_CELLS, ONE_CELLS, TWO_CELLS, d1, d2, dict(_D2))


def empty_complex() -> CellComplexData:
    return CellComplexData((), (), (), (), ())


def verify_dd_zero(c: CellComplexData) -> bool:
    prod = _mat_mul([list(r) for r in c.d1], [list(r) for r in c.d2])
    return all(v == 0 for row in prod for v in row)


def _as_vector(chain, names) -> list:
    if isinstance(chain, dict):
        unknown = set(chain) - set(names)
        if unknown:
            raise DimensionMismatch(f"unknown cells {sorted(unknown)}")
        return [int(chain.get(n, 0)) for n in names]
    vec = [int(v) for v in chain]
    if len(vec) != len(names):
        raise DimensionMismatch(f"chain has {len(vec)} entries, expected {len(names)}")
    return vec


def boundary(c: CellComplexData, chain, degree: int) -> list:
    """Apply d2 (degree 2) or d1 (degree 1) to a chain given as a vector or {cell: coeff}."""
    if degree == 2:
        v = _as_vector(chain, c.two_cells)
        mat = c.d2
    elif degree == 1:
        v = _as_vector(chain, c.one_cells)
        mat = c.d1
    else:
        raise DimensionMismatch(f"no boundary map in degree {degree}")
    return [sum(a * b for a, b in zip(row, v)) for row in mat]


def _infer_degree(c, chain):
    if isinstance(chain, dict):
        keys = set(chain)
        if keys and keys <= set(c.two_cells):
            return 2
        if keys <= set(c.one_cells):
            return 1
        raise DimensionMismatch(f"chain mixes or names unknown cells: {sorted(keys)}")
    n = len(chain)
    if n == len(c.two_cells):
        return 2
    if n == len(c.one_cells):
        return 1
    raise DimensionMismatch(f"chain of length {n} matches no cell dimension")


def is_cycle(c: CellComplexData, chain, degree: Optional[int] = None) -> bool:
    degree = degree or _infer_degree(c, chain)
    return all(v == 0 for v in boundary(c, chain, degree))


# -- Smith normal form ---------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """D = U * A * V with U, V unimodular and D diagonal, d1 | d2 | ..."""

    D: tuple
    U: tuple
    V: tuple

    @property
    def diagonal(self) -> tuple:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    A = [list(map(int, r)) for r in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U, V = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        for M in (A, U):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(src, dst, k):
        for M in (A, V):
            for r in M:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # enforce divisibility of the rest of the matrix
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            for M in (A, U):
                M[t] = [-x for x in M[t]]
        t += 1
    return SmithForm(tuple(map(tuple, A)), tuple(map(tuple, U)), tuple(map(tuple, V)))


@dataclass(frozen=True)
class HomologyRanks:
    betti: tuple
    torsion: dict  # degree -> tuple of invariant factors > 1

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))


def homology_ranks(c: CellComplexData) -> HomologyRanks:
    n0, n1, n2 = len(c.zero_cells), len(c.one_cells), len(c.two_cells)
    s1 = smith_normal_form(c.d1) if n0 and n1 else None
    s2 = smith_normal_form(c.d2) if n1 and n2 else None
    r1 = s1.rank if s1 else 0
    r2 = s2.rank if s2 else 0
    betti = (n0 - r1, n1 - r1 - r2, n2 - r2)
    torsion = {
        0: tuple(d for d in (s1.diagonal if s1 else ()) if d > 1),
        1: tuple(d for d in (s2.diagonal if s2 else ()) if d > 1),
        2: (),
    }
    return HomologyRanks(betti, torsion)


def euler_characteristic(c: CellComplexData) -> int:
    return len(c.zero_cells) - len(c.one_cells) + len(c.two_cells)


def subcomplex(c: CellComplexData, cells: Sequence[str]) -> CellComplexData:
    """Restriction to the named cells; raises if a boundary leaves the subcomplex."""
    keep = set(cells)
    z = tuple(v for v in c.zero_cells if v in keep)
    o = tuple(e for e in c.one_cells if e in keep)
    t = tuple(f for f in c.two_cells if f in keep)
    for f in t:
        if set(c.column("d2", f)) - set(o):
            raise DimensionMismatch(f"boundary of {f} leaves the subcomplex")
    for e in o:
        if set(c.column("d1", e)) - set(z):
            raise DimensionMismatch(f"boundary of {e} leaves the subcomplex")
    d1 = tuple(tuple(c.d1[c.zero_cells.index(v)][c.one_cells.index(e)] for e in o) for v in z)
    d2 = tuple(tuple(c.d2[c.one_cells.index(e)][c.two_cells.index(f)] for f in t) for e in o)
    return CellComplexData(z, o, t, d1, d2, {f: c.boundary_lists.get(f) for f in t})


# -- boundary certificates -------------------------------------------------------


@dataclass(frozen=True)
class BoundaryResult:
    is_boundary: bool
    certificate: Optional[dict]  # 2-cell -> coefficient

    def __bool__(self):
        return self.is_boundary


def _pivot_solution(mat, b):
    """Exact solution of mat u = b using pivots in column order, free variables zero."""
    rows, cols = len(mat), len(mat[0])
    M = [[Fraction(x) for x in r] + [Fraction(v)] for r, v in zip(mat, b)]
    pivots = []
    r = 0
    for j in range(cols):
        p = next((i for i in range(r, rows) if M[i][j] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][j]
        M[r] = [x / piv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][j] != 0:
                k = M[i][j]
                M[i] = [a - k * b_ for a, b_ in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == rows:
            break
    if any(M[i][-1] != 0 for i in range(r, rows)):
        return None
    u = [Fraction(0)] * cols
    for i, j in enumerate(pivots):
        u[j] = M[i][-1]
    return u


def _snf_solution(mat, b):
    s = smith_normal_form(mat)
    Ub = [sum(x * y for x, y in zip(row, b)) for row in s.U]
    cols = len(mat[0])
    z = [0] * cols
    for i, v in enumerate(Ub):
        d = s.D[i][i] if i < cols else 0
        if d == 0:
            if v != 0:
                return None
        else:
            if v % d:
                return None
            z[i] = v // d
    return [sum(x * y for x, y in zip(row, z)) for row in s.V]


def is_boundary(c: CellComplexData, chain) -> BoundaryResult:
    """Is the 1-cycle ``chain`` equal to d2 of an integer 2-chain?

    Solvability is decided by Smith normal form.  The certificate prefers the
    solution supported on the earliest independent columns; the Smith
    solution is the fallback when that one is not integral.
    """
    b = _as_vector(chain, c.one_cells)
    if not is_cycle(c, b, 1):
        raise NotACycle("chain has nonzero boundary")
    if not any(b):
        return BoundaryResult(True, {})
    mat = [list(r) for r in c.d2]
    u = _snf_solution(mat, b)
    if u is None:
        return BoundaryResult(False, None)
    pv = _pivot_solution(mat, b)
    if pv is not None and all(x.denominator == 1 for x in pv):
        u = [int(x) for x in pv]
    cert = {name: k for name, k in zip(c.two_cells, u) if k}
    assert boundary(c, cert, 2) == b
    return BoundaryResult(True, cert)


# -- links -------------------------------------------------------------------------


def _endpoints(c, edge, sign):
    col = c.column("d1", edge)
    head = next(v for v, k in col.items() if k == 1)
    tail = next(v for v, k in col.items() if k == -1)
    return (tail, head) if sign > 0 else (head, tail)


def cyclic_boundary(c: CellComplexData, cell: str) -> tuple:
    """The boundary of a 2-cell as a closed edge path ((edge, sign), ...).

    Reconstructed by matching endpoints; normalized to start with the first
    listed term.  Raises AmbiguousCyclicOrder if the order is not unique.
    """
    terms = list(c.boundary_lists[cell])
    first, rest = terms[0], terms[1:]
    found = set()
    for perm in itertools.permutations(rest):
        seq = (first, *perm)
        ends = [_endpoints(c, e, s) for e, s in seq]
        if all(ends[i][1] == ends[(i + 1) % len(seq)][0] for i in range(len(seq))):
            found.add(seq)
    if len(found) != 1:
        raise AmbiguousCyclicOrder(f"cell {cell}: {len(found)} cyclic orders")
    return found.pop()


@dataclass(frozen=True)
class LinkEdge:
    cell: str
    source: str  # 1-cell arriving at the base vertex
    target: str  # 1-cell leaving it


@dataclass(frozen=True)
class LinkGraph:
    base: str
    vertices: tuple
    edges: tuple

    def edge_cells(self) -> tuple:
        return tuple(e.cell for e in self.edges)

    def chain_boundary(self, chain: dict) -> dict:
        """Boundary in the link graph of a chain {cell: coeff} of its edges."""
        out = {}
        for e in self.edges:
            k = chain.get(e.cell, 0)
            if k:
                out[e.target] = out.get(e.target, 0) + k
                out[e.source] = out.get(e.source, 0) - k
        return {v: k for v, k in out.items() if k}

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "vertices": list(self.vertices),
            "edges": [[e.cell, e.source, e.target] for e in self.edges],
        }


def link_graph(c: CellComplexData, vertex: str) -> LinkGraph:
    if vertex not in c.zero_cells:
        raise ValueError(f"unknown vertex {vertex!r}")
    verts = tuple(e for e in c.one_cells if vertex in c.column("d1", e))
    edges = []
    for cell in c.two_cells:
        seq = cyclic_boundary(c, cell)
        k = len(seq)
        for i in range(k):
            e_in, s_in = seq[i]
            e_out, s_out = seq[(i + 1) % k]
            if _endpoints(c, e_in, s_in)[1] == vertex:
                edges.append(LinkEdge(cell, e_in, e_out))
    return LinkGraph(vertex, verts, tuple(edges))


def links_disjoint(g1: LinkGraph, g2: LinkGraph) -> bool:
    """No shared link vertex and no shared corner.

    A square cell meets every 0-cell, so its label appears in both links,
    but the corners themselves are different.
    """
    if set(g1.vertices) & set(g2.vertices):
        return False
    corners1 = {(g1.base, e) for e in g1.edges}
    corners2 = {(g2.base, e) for e in g2.edges}
    return not corners1 & corners2 and g1.base != g2.base


# -- the cell function f -----------------------------------------------------------

# signed point terms: ("x"|"y"|"0"|"q"|"m", sign)
CELL_FORMULAS = {
    "A": (("x", 1), ("0", -1), ("y", 1), ("q", -1)),
    "B": (("y", 1), ("x", -1)),
    "C": (("q", 1), ("x", -1), ("m", 1), ("y", -1)),
    "D": (("x", 1), ("0", -1), ("m", 1), ("y", -1)),
    "E": (("x", 1), ("0", -1), ("q", 1), ("y", -1)),
    "F": (("y", 1), ("x", -1)),
    "G": (("y", 1), ("x", -1), ("m", 1), ("q", -1)),
    "H": (("x", 1), ("y", -1)),
    "I": (("x", 1), ("q", -1), ("m", 1), ("y", -1)),
    "J": (("y", 1), ("x", -1)),
    "K": (("y", 1), ("x", -1), ("q", 1), ("0", -1)),
    "L": (("x", 1), ("y", -1)),
}

# arcs (1-based) whose vectors f sums on each cell
CELL_ARCS = {
    "A": (1, 3), "B": (2, 3), "C": (2, 4), "D": (1, 4),
    "E": (1, 3), "F": (2,), "G": (2, 4), "H": (1, 3, 4),
    "I": (2, 4), "J": (3,), "K": (1, 3), "L": (1, 2, 4),
}

CELL_CASE = {c: 1 for c in "ABCD"} | {c: 2 for c in "EFGH"} | {c: 3 for c in "IJKL"}
PAIRING_CELLS = tuple("ABCDEGIK")
SUBLOOP_CELLS = tuple("FHJL")


@dataclass(frozen=True)
class CellFunctionTable:
    formulas: dict = field(default_factory=lambda: dict(CELL_FORMULAS))
    arcs: dict = field(default_factory=lambda: dict(CELL_ARCS))

    def expression(self, cell: str) -> str:
        out = []
        for sym, sign in self.formulas[cell]:
            term = f"phi({sym})"
            out.append(("+ " if sign > 0 else "- ") + term)
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _resolve_q(path: LatticePath, q):
    if q is not None:
        return q
    if path.m % 2:
        raise OutOfDomain(f"loop length {path.m} is odd; pass q explicitly")
    return path.m // 2


def in_domain(cell: str, x: int, y: int, q: int, m: int) -> bool:
    case = CELL_CASE[cell]
    if case == 1:
        return 0 <= x <= q <= y <= m
    if case == 2:
        return 0 <= x <= y <= q
    return q <= x <= y <= m


def arc_bounds(cell: str, x: int, y: int, q: int, m: int) -> tuple:
    case = CELL_CASE[cell]
    if case == 1:
        cuts = (x, q, y)
    elif case == 2:
        cuts = (x, y, q)
    else:
        cuts = (q, x, y)
    b = (0, *cuts, m)
    return tuple(zip(b, b[1:]))


def evaluate_cell_function(cell: str, path: LatticePath, x: int, y: int,
                           q: Optional[int] = None) -> tuple:
    """f on ``cell`` at integer parameters (x, y), read off the table formula."""
    if cell not in CELL_FORMULAS:
        raise ValueError(f"unknown cell {cell!r}")
    q = _resolve_q(path, q)
    m = path.m
    if not in_domain(cell, x, y, q, m):
        raise OutOfDomain(f"({x}, {y}) is outside the domain of cell {cell} (q={q}, m={m})")
    where = {"x": x, "y": y, "0": 0, "q": q, "m": m}
    out = [0] * path.dim
    for sym, sign in CELL_FORMULAS[cell]:
        pt = path.points[where[sym]]
        for k in range(path.dim):
            out[k] += sign * pt[k]
    return tuple(out)


def is_degenerate(cell: str, x: int, y: int, q: int, m: int) -> bool:
    """The summed arcs, or the remaining arcs, are all empty."""
    bounds = arc_bounds(cell, x, y, q, m)
    inside = sum(bounds[i - 1][1] - bounds[i - 1][0] for i in CELL_ARCS[cell])
    return inside == 0 or inside == m


@dataclass(frozen=True)
class CellZero:
    cell: str
    x: int
    y: int

    def to_json(self) -> dict:
        return {"cell": self.cell, "x": self.x, "y": self.y}


def zero_scan(path: LatticePath, q: Optional[int] = None) -> list:
    """Every nondegenerate integer zero of f, ordered by cell then (x, y)."""
    if not path.closed:
        raise NotClosed("zero_scan expects a closed loop")
    q = _resolve_q(path, q)
    m = path.m
    P = path.points
    out = []
    for cell in TWO_CELLS:
        terms = CELL_FORMULAS[cell]
        for x in range(m + 1):
            for y in range(x, m + 1):
                if not in_domain(cell, x, y, q, m):
                    continue
                where = {"x": x, "y": y, "0": 0, "q": q, "m": m}
                if any(sum(s * P[where[sym]][k] for sym, s in terms) for k in range(path.dim)):
                    continue
                if not is_degenerate(cell, x, y, q, m):
                    out.append(CellZero(cell, x, y))
    return out


def zero_to_pairing(z: CellZero, q: int, m: int) -> tuple:
    """(cuts, pairing) of the arc decomposition at a pairing-cell zero.

    The pairing is the partition of arc indices {1..4} into the summed pair
    and its complement, with the pair containing arc 1 listed first.
    """
    if z.cell not in PAIRING_CELLS:
        raise ValueError(f"cell {z.cell} does not encode a two-two pairing")
    bounds = arc_bounds(z.cell, z.x, z.y, q, m)
    cuts = tuple(b[0] for b in bounds[1:])
    S = set(CELL_ARCS[z.cell])
    T = {1, 2, 3, 4} - S
    first, second = (S, T) if 1 in S else (T, S)
    return cuts, (tuple(sorted(first)), tuple(sorted(second)))


def zero_to_witness(z: CellZero, w1: str, w2: str):
    """Turn a pairing-cell zero on the loop of (w1, w2) into a SplitWitness."""
    q, m = len(w1), len(w1) + len(w2)
    cuts, (xs, ys) = zero_to_pairing(z, q, m)
    names = {}
    for i, a in enumerate(xs):
        names[a] = f"x{i + 1}"
    for i, a in enumerate(ys):
        names[a] = f"y{i + 1}"
    edges = (0, *cuts, m)
    tokens = [names[i] for i in range(1, 5)]
    k = cuts.index(q) + 1
    groups = (tuple(tokens[:k]), tuple(tokens[k:]))
    arr = Arrangement(groups)
    spans = tuple(zip(tokens, edges, edges[1:]))
    return SplitWitness((w1, w2), arr, spans, "zero_scan")


# -- consistency with the splitter ------------------------------------------------

_PAIRINGS = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))


def _pairing_key(cuts, pairing):
    return tuple(cuts), frozenset(frozenset(p) for p in pairing)


@dataclass
class ConsistencyReport:
    w1: str
    w2: str
    zeros: int = 0
    valid_pairings: int = 0
    uncovered_certified: int = 0
    bijective: Optional[bool] = None
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def _sum_vec(P, spans):
    n = len(P[0])
    out = [0] * n
    for a, b in spans:
        for k in range(n):
            out[k] += P[b][k] - P[a][k]
    return out


def scan_consistency(w1: str, w2: str) -> ConsistencyReport:
    """Cross-check zero_scan against the arc pairings and the splitter.

    (a) every pairing-cell zero is a valid split witness and every subloop-cell
    zero is a genuine self-intersection; (b) every valid two-two pairing of
    four arcs cut at q is a zero of each cell encoding it, or is not encoded
    and is certified by a coincidence of two cut points; (c) on embedded loops
    with p != q the two sets agree exactly and contain find_split's witness.
    """
    rep = ConsistencyReport(w1, w2)
    path = to_path(w1 + w2, 2)
    q, m = len(w1), len(w1) + len(w2)
    P = path.points
    zeros = zero_scan(path, q)
    rep.zeros = len(zeros)
    zero_set = {(z.cell, z.x, z.y) for z in zeros}
    from_zeros = set()
    for z in zeros:
        if z.cell in PAIRING_CELLS:
            wit = zero_to_witness(z, w1, w2)
            bad = check_witness(wit)
            if bad:
                rep.problems.append(f"zero {z} gives invalid witness: {bad}")
            from_zeros.add(_pairing_key(*zero_to_pairing(z, q, m)))
        else:
            arc = CELL_ARCS[z.cell][0] if len(CELL_ARCS[z.cell]) == 1 else \
                ({1, 2, 3, 4} - set(CELL_ARCS[z.cell])).pop()
            a, b = arc_bounds(z.cell, z.x, z.y, q, m)[arc - 1]
            if not (a < b and (a, b) != (0, m) and P[a] == P[b]):
                rep.problems.append(f"subloop zero {z} is not a self-intersection")

    valid = set()
    for cell_case, dom in ((1, "ABCD"), (2, "EFGH"), (3, "IJKL")):
        for x in range(m + 1):
            for y in range(x, m + 1):
                if not in_domain(dom[0], x, y, q, m):
                    continue
                bounds = arc_bounds(dom[0], x, y, q, m)
                for pairing in _PAIRINGS:
                    first = [bounds[i - 1] for i in pairing[0]]
                    ln = sum(b - a for a, b in first)
                    if ln == 0 or ln == m or any(_sum_vec(P, first)):
                        continue
                    cuts = tuple(b[0] for b in bounds[1:])
                    valid.add(_pairing_key(cuts, pairing))
                    encoders = [c for c in dom if c in PAIRING_CELLS and
                                _pairing_key((), (CELL_ARCS[c], tuple(
                                    sorted({1, 2, 3, 4} - set(CELL_ARCS[c])))))[1]
                                == _pairing_key((), pairing)[1]]
                    if encoders:
                        missing = [c for c in encoders if (c, x, y) not in zero_set]
                        if missing:
                            rep.problems.append(
                                f"pairing {pairing} at cuts {cuts} not a zero of {missing}")
                        continue
                    # adjacent arcs cancel: the outer ends of the pair coincide
                    pair = pairing[0] if pairing[0][1] - pairing[0][0] == 1 else pairing[1]
                    a = bounds[pair[0] - 1][0]
                    b = bounds[pair[1] - 1][1]
                    if not (a < b and P[a] == P[b]):
                        rep.problems.append(f"unencoded pairing {pairing} at {cuts} uncertified")
                    else:
                        rep.uncovered_certified += 1
    rep.valid_pairings = len(valid)
    if not from_zeros <= valid:
        rep.problems.append("a zero encodes no valid pairing")

    if 0 < q < m and is_embedded(path) and P[0] != P[q]:
        rep.bijective = from_zeros == valid and all(z.cell in PAIRING_CELLS for z in zeros)
        if not rep.bijective:
            rep.problems.append("zeros and valid pairings differ on an embedded loop")
        wit = find_split(w1, w2)
        if wit is not None:
            xs, ys = wit.pairing
            if _pairing_key(wit.cuts, (xs, ys)) not in from_zeros:
                rep.problems.append(f"find_split witness {wit.cuts} {wit.pairing} is not a zero")
    return rep
