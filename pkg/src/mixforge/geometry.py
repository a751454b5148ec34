"""Lattice-path realization of words, self-intersections and exact winding numbers.

A word of length m is parametrized by the integers t = 0..m; the loop of a
pair (w1, w2) has its base point p at t = 0 and the second marked point q at
t = len(w1).  For a bare path, q defaults to m/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    AmbiguousTurn,
    AntiparallelTangents,
    NotClosed,
    NotEmbedded,
    OddLength,
    ZeroVector,
)
from .words import ALPHABET, WordLike, as_text, in_On

CASE_LABELS = ("case1", "case2", "case3", "case4", "case5")


def unit_step(ch: str, n: int) -> tuple:
    i = ALPHABET.index(ch)
    v = [0] * n
    v[i // 2] = 1 if i % 2 == 0 else -1
    return tuple(v)


@dataclass(frozen=True)
class LatticePath:
    points: tuple

    @property
    def m(self) -> int:
        return len(self.points) - 1

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def closed(self) -> bool:
        return self.points[0] == self.points[-1]

    def __getitem__(self, t):
        return self.points[t]

    def to_json(self) -> list:
        return [list(p) for p in self.points]

    @classmethod
    def from_json(cls, data) -> "LatticePath":
        return cls(tuple(tuple(int(c) for c in p) for p in data))


def to_path(w: WordLike, n: int | None = None) -> LatticePath:
    text = as_text(w)
    if n is None:
        n = getattr(w, "n", None) or (3 if any(c in "cC" for c in text) else 2)
    if n > 3:
        raise ValueError("paths are realized in Z^2 or Z^3 only")
    cur = (0,) * n
    pts = [cur]
    for ch in text:
        cur = tuple(a + b for a, b in zip(cur, unit_step(ch, n)))
        pts.append(cur)
    return LatticePath(tuple(pts))


def is_embedded(path: LatticePath) -> bool:
    """Closed, and no point repeats except start = end.

    A two-step loop retraces its only edge and is not counted as embedded.
    """
    if not path.closed:
        return False
    if path.m == 2:
        return False
    body = path.points[:-1]
    return len(set(body)) == len(body)


@dataclass(frozen=True)
class IntersectionRecord:
    t1: int
    t2: int
    case_label: str


def classify_pair(t1: int, t2: int, q: int, m: int) -> str:
    """Reduction case for a coincidence phi(t1) = phi(t2), 0 <= t1 < t2 < m.

    Returns ``"pq"`` for the coincidence of the two marked points themselves.
    """
    if not 0 <= t1 < t2 < m:
        raise ValueError(f"bad parameter pair ({t1}, {t2}) for m={m}")
    if t1 == 0:
        if t2 < q:
            return "case1"
        if t2 == q:
            return "pq"
        return "case2"
    if t1 < q:
        if t2 < q:
            return "case4"
        if t2 == q:
            return "case3"
        return "case5"
    if t1 == q:
        return "case3"
    return "case4"


def _coincidences(points, m):
    seen = {}
    out = []
    for t in range(m):
        pt = points[t]
        for s in seen.get(pt, ()):
            out.append((s, t))
        seen.setdefault(pt, []).append(t)
    out.sort()
    return out


def self_intersections(path: LatticePath, q: int | None = None) -> list:
    """All coincident parameter pairs of a closed loop, labelled by reduction case.

    Parameters run over 0..m-1 (t = m is the same parameter as t = 0), and the
    p-q pair is left out.  With ``q`` omitted the loop must have even length
    and q = m/2.
    """
    if not path.closed:
        raise NotClosed("self_intersections expects a closed path")
    m = path.m
    if q is None:
        if m % 2:
            raise OddLength(f"loop length {m} is odd; q = m/2 is undefined")
        q = m // 2
    out = []
    for t1, t2 in _coincidences(path.points, m):
        label = classify_pair(t1, t2, q, m)
        if label != "pq":
            out.append(IntersectionRecord(t1, t2, label))
    return out


@dataclass(frozen=True)
class Deletion:
    case_label: str
    start: int
    end: int
    removed: str
    q: int  # position of q in the word before this deletion


@dataclass(frozen=True)
class SimplifyOutcome:
    """Result of :func:`simplify_loop`.

    ``w1``/``w2`` are the words after all deletions.  If a case-5 crossing
    was met, ``split`` holds its (t1, t2) in the coordinates of those words.
    """

    w1: str
    w2: str
    deletions: tuple = ()
    split: Optional[tuple] = None
    embedded: bool = False

    @property
    def is_split(self) -> bool:
        return self.split is not None


def simplify_loop(w1: WordLike, w2: WordLike) -> SimplifyOutcome:
    """Apply the five reduction cases to the loop of w1w2 until it is embedded.

    Cases 1-4 delete a closed sub-loop lying in one half; case 5 (a crossing
    from the first half to the second) stops immediately with a direct split.
    The lowest (t1, t2) coincidence is handled first.
    """
    a, b = as_text(w1), as_text(w2)
    if not in_On(a + b):
        raise ValueError("simplify_loop expects w1w2 in O_n")
    deletions = []
    while True:
        w = a + b
        q, m = len(a), len(w)
        pts = to_path(w).points
        pair = None
        for t1, t2 in _coincidences(pts, m):
            label = classify_pair(t1, t2, q, m)
            if label != "pq":
                pair = (t1, t2, label)
                break
        if pair is None:
            if m == 2 and q in (0, 2):
                # two-step loop inside one half: the whole word is a sub-loop at p
                label = "case1" if q == 2 else "case2"
                deletions.append(Deletion(label, 0, 2, w, q))
                a, b = "", ""
                continue
            path = to_path(w)
            return SimplifyOutcome(a, b, tuple(deletions), None, m == 0 or is_embedded(path))
        t1, t2, label = pair
        if label == "case5":
            return SimplifyOutcome(a, b, tuple(deletions), (t1, t2), False)
        if label == "case1":
            start, end = 0, t2
        elif label == "case2":
            start, end = t2, m
        elif label == "case3":
            start, end = (t1, q) if t2 == q else (q, t2)
        else:
            start, end = t1, t2
        deletions.append(Deletion(label, start, end, w[start:end], q))
        w = w[:start] + w[end:]
        if end <= q:
            q -= end - start
        a, b = w[:q], w[q:]


# -- exact turning ---------------------------------------------------------


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _half(v):
    # 0 for principal argument in [0, pi), 1 for [pi, 2pi)
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _arg_less(u, v):
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return _cross(u, v) > 0


def _turn_wraps(u, v, index):
    """Change of the wrap counter when turning from u to v along the shorter arc."""
    c = _cross(u, v)
    if c == 0:
        if _dot(u, v) > 0:
            return 0
        raise AmbiguousTurn(index)
    if c > 0:
        return 1 if _arg_less(v, u) else 0
    return -1 if _arg_less(u, v) else 0


def _check_nonzero(vectors):
    for i, v in enumerate(vectors):
        if v[0] == 0 and v[1] == 0:
            raise ZeroVector(i)


def winding_number(vectors: Sequence, closed: bool = True) -> int:
    """Number of signed revolutions made by a sequence of nonzero plane vectors.

    Consecutive vectors are joined by the shorter rotation.  With
    ``closed=True`` the turn from the last vector back to the first is
    included and the result is exact.  With ``closed=False`` the open turning
    is truncated toward zero.  Only integer sign tests are used.
    """
    vs = [tuple(v) for v in vectors]
    _check_nonzero(vs)
    if not vs:
        return 0
    wraps = 0
    for i in range(len(vs) - 1):
        wraps += _turn_wraps(vs[i], vs[i + 1], i)
    if closed:
        try:
            wraps += _turn_wraps(vs[-1], vs[0], len(vs) - 1)
        except AmbiguousTurn:
            raise NotClosed("closing turn is antiparallel; total turning undefined")
        return wraps
    # open: total = 2pi*wraps + (arg(last) - arg(first)), the second term in (-2pi, 2pi)
    first, last = vs[0], vs[-1]
    if _arg_less(first, last):
        return wraps if wraps >= 0 else wraps + 1
    if _arg_less(last, first):
        return wraps - 1 if wraps > 0 else wraps
    return wraps


def edge_directions(path: LatticePath) -> list:
    return [tuple(b - a for a, b in zip(p, r)) for p, r in zip(path.points, path.points[1:])]


def rotation_number(path: LatticePath) -> int:
    """Winding number of the edge-direction loop of a closed path."""
    return winding_number(edge_directions(path), closed=True)


@dataclass(frozen=True)
class WindingReport:
    cycle_id: str
    degree: int
    case_class: str
    u_alpha: tuple
    u_beta: tuple
    u_gamma: tuple
    u_delta: tuple
    chords: tuple = field(default=(), repr=False)


def degree_case(degree: int) -> str:
    if degree > 0:
        return "case1"
    if degree < 0:
        return "case2"
    return "case3"


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def link_cycle_degree(path: LatticePath, half: str = "first", delta: int = 1,
                      q: int | None = None) -> WindingReport:
    """Degree of the discretized cell function around the alpha-beta or gamma-delta cycle.

    The chord sweep phi(x + delta) - phi(x) runs across the chosen half and
    is closed up by the shorter rotation from its last chord back to its first.
    """
    if half not in ("first", "second"):
        raise ValueError("half must be 'first' or 'second'")
    if path.dim != 2:
        raise ValueError("link_cycle_degree works on planar paths")
    m = path.m
    if q is None:
        if m % 2:
            raise OddLength(f"loop length {m} is odd")
        q = m // 2
    if not is_embedded(path):
        raise NotEmbedded("link_cycle_degree expects an embedded loop")
    if delta < 1 or delta > q or delta > m - q:
        raise ValueError(f"chord step {delta} does not fit in both halves")
    P = path.points
    u_alpha = _sub(P[delta], P[0])
    u_beta = _sub(P[q], P[q - delta])
    u_gamma = _sub(P[q + delta], P[q])
    u_delta = _sub(P[m], P[m - delta])
    if half == "first":
        xs, cycle_id, ends = range(0, q - delta + 1), "alpha_beta", (u_alpha, u_beta)
    else:
        xs, cycle_id, ends = range(q, m - delta + 1), "gamma_delta", (u_gamma, u_delta)
    if _cross(*ends) == 0 and _dot(*ends) < 0:
        raise AntiparallelTangents(f"tangents {ends[0]} and {ends[1]} are antiparallel")
    chords = [_sub(P[x + delta], P[x]) for x in xs]
    deg = winding_number(chords, closed=True)
    return WindingReport(cycle_id, deg, degree_case(deg), u_alpha, u_beta, u_gamma, u_delta,
                         tuple(chords))


def rotate_path(path: LatticePath, quarter_turns: int = 1) -> LatticePath:
    pts = path.points
    for _ in range(quarter_turns % 4):
        pts = tuple((-y, x) for x, y in pts)
    return LatticePath(pts)
