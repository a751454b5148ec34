"""Decomposition search and derivation building.

Given a balanced tuple (w1, w2) or (w1, w2, w3), find two strictly shorter
balanced tuples whose components, read as blocks, rearrange into it.  For O_2
such a split always exists once the total length is at least 4; the search
here finds it and the derivation builder recurses on it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import Incompleteness, NotInOn
from .geometry import simplify_loop
from .grammar import (
    AXIOM,
    MERGE,
    PAIR,
    Arrangement,
    DerivationTree,
    axiom_tree,
    enumerate_arrangements,
    grammar_for,
    is_variable,
)
from .words import ALPHABET, WordLike, as_text, displacement, in_On


def _prefix_displacements(w: str, n: int):
    cur = [0] * n
    out = [tuple(cur)]
    for ch in w:
        i = ALPHABET.index(ch)
        cur[i // 2] += 1 if i % 2 == 0 else -1
        out.append(tuple(cur))
    return out


@dataclass(frozen=True)
class ArcDecomposition:
    """The word w1w2.. cut into consecutive arcs K1, K2, ... at ``cuts``.

    ``q_index`` is where the second component starts.  When q is one of the
    cuts the remaining two cuts are the points r and s.
    """

    word: str
    q_index: int
    cuts: tuple
    n: int = 2

    p_index = 0

    @property
    def arcs(self) -> tuple:
        b = (0, *self.cuts, len(self.word))
        return tuple(self.word[x:y] for x, y in zip(b, b[1:]))

    @property
    def arc_vectors(self) -> tuple:
        return tuple(displacement(a, self.n) for a in self.arcs)

    @property
    def r_index(self) -> Optional[int]:
        rest = self._others()
        return rest[0] if rest else None

    @property
    def s_index(self) -> Optional[int]:
        rest = self._others()
        return rest[1] if rest else None

    def _others(self):
        cuts = list(self.cuts)
        if len(cuts) != 3 or self.q_index not in cuts:
            return None
        cuts.remove(self.q_index)
        return tuple(cuts)


@dataclass(frozen=True)
class SplitWitness:
    """A Merge arrangement plus block positions reconstructing ``parts``.

    ``spans`` maps each variable token to its [start, end) in the
    concatenated word; blocks of the first child are named x*, of the second y*.
    """

    parts: tuple
    arrangement: Arrangement
    spans: tuple  # ((token, start, end), ...) in positional order
    source: str = "search"

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def word(self) -> str:
        return "".join(self.parts)

    @property
    def cuts(self) -> tuple:
        return tuple(s for _, s, _ in self.spans[1:])

    def block(self, token: str) -> str:
        for t, s, e in self.spans:
            if t == token:
                return self.word[s:e]
        raise KeyError(token)

    @property
    def rho(self) -> int:
        return len(self.parts)

    @property
    def x(self) -> tuple:
        return tuple(self.block(f"x{i + 1}") for i in range(self.rho))

    @property
    def y(self) -> tuple:
        return tuple(self.block(f"y{i + 1}") for i in range(self.rho))

    @property
    def quadruple(self) -> tuple:
        return self.x + self.y

    @property
    def decomposition(self) -> ArcDecomposition:
        return ArcDecomposition(self.word, len(self.parts[0]), self.cuts, self.n)

    @property
    def pairing(self) -> tuple:
        """1-based arc indices forming the x part and the y part."""
        xs = tuple(i + 1 for i, (t, _, _) in enumerate(self.spans) if t[0] == "x")
        ys = tuple(i + 1 for i, (t, _, _) in enumerate(self.spans) if t[0] == "y")
        return xs, ys

    def to_json(self) -> dict:
        x, y = self.x, self.y
        quad = {f"x{i + 1}": v for i, v in enumerate(x)}
        quad.update({f"y{i + 1}": v for i, v in enumerate(y)})
        return {
            "parts": list(self.parts),
            "cuts": list(self.cuts),
            "pairing": [list(p) for p in self.pairing],
            "quadruple": quad,
            "arrangement": self.arrangement.to_json(),
            "source": self.source,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "SplitWitness":
        parts = tuple(data["parts"])
        arr = Arrangement.from_json(data["arrangement"])
        quad = data["quadruple"]
        spans, pos = [], 0
        for tok in arr.tokens:
            ln = len(quad[tok])
            spans.append((tok, pos, pos + ln))
            pos += ln
        return cls(parts, arr, tuple(spans), data.get("source", "search"))


def check_witness(wit: SplitWitness) -> list:
    """Structural checks; returns the list of violated conditions (empty if valid)."""
    problems = []
    n = wit.n
    word = wit.word
    total = len(word)
    spans = wit.spans
    if [s for _, s, _ in spans] != [0, *[e for _, _, e in spans[:-1]]] or spans[-1][2] != total:
        problems.append("blocks do not tile the word")
    bindings = {t: word[s:e] for t, s, e in spans}
    if wit.arrangement.apply(bindings) != tuple(wit.parts):
        problems.append("arrangement does not rebuild the parts")
    if not wit.arrangement.well_formed() or any(not is_variable(t) for t in wit.arrangement.tokens):
        problems.append("arrangement is not a Merge arrangement")
    x, y = "".join(wit.x), "".join(wit.y)
    if not in_On(x) or not in_On(y):
        problems.append("a part is not balanced")
    if any(displacement(v, n) != (0,) * n for v in (x, y)):
        problems.append("pair sums are not zero")
    if not max(len(x), len(y)) < total:
        problems.append("no strict length decrease")
    return problems


# -- search -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pattern_order(rho: int):
    """Distinct search patterns of the Merge family, ordered by first arrangement index.

    A pattern is the group sizes plus the x/y label of each block position;
    validity of cut positions depends on nothing else.
    """
    fam = grammar_for(rho).family(MERGE)
    seen = {}
    for idx, arr in enumerate(enumerate_arrangements(fam)):
        key = (tuple(len(g) for g in arr.groups), tuple(t[0] == "x" for t in arr.tokens))
        if key not in seen:
            seen[key] = (idx, arr)
    return tuple((key, idx, arr) for key, (idx, arr) in seen.items())


def _cut_candidates(sizes, bounds):
    """Lexicographic internal cut tuples for blocks grouped by component."""
    per = []
    for size, (lo, hi) in zip(sizes, bounds):
        if size == 0:
            if hi != lo:
                return []
            per.append([()])
        else:
            per.append(list(itertools.combinations_with_replacement(range(lo, hi + 1), size - 1)))
    out = []
    for combo in itertools.product(*per):
        cuts = []
        for k, (size, (lo, hi)) in enumerate(zip(sizes, bounds)):
            if size == 0:
                continue
            cuts.extend(combo[k])
            cuts.append(hi)
        out.append(tuple(cuts[:-1]))
    return out


def _search(parts, n, limit_patterns=None):
    """Exhaustive canonical search; returns (witness or None, candidates scanned)."""
    rho = len(parts)
    word = "".join(parts)
    total = len(word)
    P = _prefix_displacements(word, n)
    zero = (0,) * n
    bounds, pos = [], 0
    for part in parts:
        bounds.append((pos, pos + len(part)))
        pos += len(part)
    scanned = 0
    for key, idx, arr in _pattern_order(rho):
        sizes, is_x = key
        for cuts in _cut_candidates(sizes, bounds):
            scanned += 1
            edges = (0, *cuts, total)
            xlen = 0
            xd = list(zero)
            for flag, s, e in zip(is_x, edges, edges[1:]):
                if flag:
                    xlen += e - s
                    ps, pe = P[s], P[e]
                    for k in range(n):
                        xd[k] += pe[k] - ps[k]
            if 0 < xlen < total and all(v == 0 for v in xd):
                spans = tuple(zip(arr.tokens, edges, edges[1:]))
                return SplitWitness(tuple(parts), arr, spans, "search"), scanned
    return None, scanned


def _endpoint_witness(w1: str, w2: str) -> Optional[SplitWitness]:
    if not w1 or not w2 or len(w1) + len(w2) < 4:
        return None
    m, q = len(w1) + len(w2), len(w1)
    s1, s2, s3, s4 = w1[0], w1[-1], w2[0], w2[-1]
    options = (
        (s1, s3, ((("x1", "y1"), ("x2", "y2"))), (0, 1, q, q + 1)),
        (s1, s4, ((("x1", "y1"), ("y2", "x2"))), (0, 1, q, m - 1)),
        (s2, s3, ((("y1", "x1"), ("x2", "y2"))), (0, q - 1, q, q + 1)),
        (s2, s4, ((("y1", "x1"), ("y2", "x2"))), (0, q - 1, q, m - 1)),
    )
    for left, right, groups, starts in options:
        if left.swapcase() != right:
            continue
        arr = Arrangement(groups)
        tokens = arr.tokens
        edges = (*starts, m)
        spans = tuple(zip(tokens, edges, edges[1:]))
        return SplitWitness((w1, w2), arr, spans, "endpoint")
    return None


def _map_back(cut, deletion, q_after):
    if cut == q_after:
        return deletion.q
    if cut >= deletion.start:
        return cut + deletion.end - deletion.start
    return cut


def _case5_witness(w1: str, w2: str) -> Optional[SplitWitness]:
    out = simplify_loop(w1, w2)
    if out.split is None:
        return None
    t1, t2 = out.split
    q = len(out.w1)
    cuts = [t1, q, t2]
    # undo deletions newest first; q before each deletion is recorded on it
    qs = [d.q for d in out.deletions[1:]] + [q]
    for d, q_after in zip(reversed(out.deletions), reversed(qs)):
        cuts = [_map_back(c, d, q_after) for c in cuts]
    m = len(w1) + len(w2)
    arr = Arrangement((("x1", "y1"), ("y2", "x2")))
    edges = (0, *cuts, m)
    wit = SplitWitness((w1, w2), arr, tuple(zip(arr.tokens, edges, edges[1:])), "case5")
    if check_witness(wit):
        raise AssertionError(f"case-5 witness failed checks for {(w1, w2)}: {check_witness(wit)}")
    return wit


def find_split(w1: WordLike, w2: WordLike, fast_paths: bool = True) -> Optional[SplitWitness]:
    """Canonical split of (w1, w2), or None when none exists.

    Order: shared inverse end letters, then a first-half/second-half crossing
    of the loop, then the least (arrangement index, cuts) over every Merge
    arrangement.
    """
    w1, w2 = as_text(w1), as_text(w2)
    if not in_On(w1 + w2):
        raise NotInOn(w1 + w2, 2)
    if fast_paths:
        wit = _endpoint_witness(w1, w2)
        if wit is not None:
            return wit
        wit = _case5_witness(w1, w2)
        if wit is not None:
            return wit
    return _search((w1, w2), 2)[0]


def all_split_witnesses(parts: Sequence[str], n: int = 2) -> list:
    """Every valid (arrangement, cuts) witness, in canonical order.  Used by tests."""
    parts = tuple(as_text(p) for p in parts)
    rho = len(parts)
    word = "".join(parts)
    total = len(word)
    bounds, pos = [], 0
    for part in parts:
        bounds.append((pos, pos + len(part)))
        pos += len(part)
    out = []
    for arr in enumerate_arrangements(grammar_for(rho).family(MERGE)):
        sizes = tuple(len(g) for g in arr.groups)
        for cuts in _cut_candidates(sizes, bounds):
            edges = (0, *cuts, total)
            wit = SplitWitness(parts, arr, tuple(zip(arr.tokens, edges, edges[1:])))
            if not check_witness(wit):
                out.append(wit)
    return out


def find_split3(w1: WordLike, w2: WordLike, w3: WordLike) -> Optional[SplitWitness]:
    parts = tuple(as_text(w) for w in (w1, w2, w3))
    if not in_On("".join(parts)):
        raise NotInOn("".join(parts), 3)
    return _search(parts, 3)[0]


@dataclass(frozen=True)
class AlternatingWitness3:
    word: str
    cuts: tuple  # five cut positions c1 <= ... <= c5

    @property
    def pieces(self) -> tuple:
        b = (0, *self.cuts, len(self.word))
        return tuple(self.word[x:y] for x, y in zip(b, b[1:]))

    @property
    def x(self) -> tuple:
        return self.pieces[0::2]

    @property
    def y(self) -> tuple:
        return self.pieces[1::2]

    def to_json(self) -> dict:
        return {"word": self.word, "cuts": list(self.cuts), "x": list(self.x), "y": list(self.y)}


def find_alternating_split3(t1: WordLike, t2: WordLike = "", t3: WordLike = "",
                            nonempty_pieces: bool = False) -> Optional[AlternatingWitness3]:
    """Least cuts writing t1t2t3 = x1 y1 x2 y2 x3 y3 with both triples balanced.

    Both triples must be nonempty and strictly shorter than the word.  With
    ``nonempty_pieces`` every one of the six subwords must be nonempty too.
    """
    word = "".join(as_text(t) for t in (t1, t2, t3))
    if not in_On(word):
        raise NotInOn(word, 3)
    m = len(word)
    P = _prefix_displacements(word, 3)
    step = 1 if nonempty_pieces else 0

    def sub(a, b):
        pa, pb = P[a], P[b]
        return (pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2])

    for c1 in range(step, m + 1):
        d1 = sub(0, c1)
        for c2 in range(c1 + step, m + 1):
            for c3 in range(c2 + step, m + 1):
                d3 = sub(c2, c3)
                d13 = (d1[0] + d3[0], d1[1] + d3[1], d1[2] + d3[2])
                for c4 in range(c3 + step, m + 1):
                    for c5 in range(c4 + step, m + 1 - step):
                        d5 = sub(c4, c5)
                        if d13[0] + d5[0] or d13[1] + d5[1] or d13[2] + d5[2]:
                            continue
                        xlen = c1 + (c3 - c2) + (c5 - c4)
                        if 0 < xlen < m:
                            return AlternatingWitness3(word, (c1, c2, c3, c4, c5))
    return None


# -- derivations ---------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    parts: tuple
    searched: int

    def to_json(self) -> dict:
        return {"kind": "counterexample", "parts": list(self.parts), "searched": self.searched}


def _pair_tree(parts, g) -> DerivationTree:
    """PairInsert over the axiom for a tuple of total length 2."""
    word = "".join(parts)
    gen = word.lower()[0]
    axis = ALPHABET.index(gen) // 2 + 1
    fam = g.family(PAIR, axis)
    child = axiom_tree(g)
    empty = {f"x{i + 1}": "" for i in range(g.rho)}
    for arr in enumerate_arrangements(fam):
        if arr.apply(empty) == tuple(parts):
            return DerivationTree(PAIR, tuple(parts), arr, (child,), axis)
    raise AssertionError(f"no PairInsert arrangement yields {parts!r}")


def _absorb_pair(wit: SplitWitness, short: str, rest_tree: DerivationTree) -> DerivationTree:
    """Rewrite Merge(two-letter part, rest) as one PairInsert over the rest."""
    letters = {}
    for tok, s, e in wit.spans:
        if tok[0] == short:
            letters[tok] = list(wit.word[s:e])
    groups = []
    for g in wit.arrangement.groups:
        new = []
        for tok in g:
            if tok[0] == short:
                new.extend(letters[tok])
            else:
                new.append("x" + tok[1])
        groups.append(tuple(new))
    arr = Arrangement(tuple(groups))
    pair_letters = [c for tok in sorted(letters) for c in letters[tok]]
    axis = ALPHABET.index(pair_letters[0].lower()) // 2 + 1
    return DerivationTree(PAIR, tuple(wit.parts), arr, (rest_tree,), axis)


def _derive(parts, g, finder, on_fail):
    total = sum(map(len, parts))
    if total == 0:
        return axiom_tree(g)
    if total == 2:
        return _pair_tree(parts, g)
    wit = finder(*parts)
    if wit is None:
        return on_fail(parts)
    x, y = wit.x, wit.y
    if sum(map(len, x)) == 2:
        return _absorb_pair(wit, "x", _derive(y, g, finder, on_fail))
    if sum(map(len, y)) == 2:
        return _absorb_pair(wit, "y", _derive(x, g, finder, on_fail))
    left = _derive(x, g, finder, on_fail)
    right = _derive(y, g, finder, on_fail)
    return DerivationTree(MERGE, tuple(wit.parts), wit.arrangement, (left, right))


def derive(w1: WordLike, w2: WordLike) -> DerivationTree:
    """Derivation of Inv(w1, w2) in the O_2 grammar, built by recursive splitting."""
    w1, w2 = as_text(w1), as_text(w2)
    if not in_On(w1 + w2):
        raise NotInOn(w1 + w2, 2)
    g = grammar_for(2)

    def fail(parts):
        _, scanned = _search(tuple(parts), 2)
        raise Incompleteness(parts, scanned)

    return _derive((w1, w2), g, find_split, fail)


class _Stop(Exception):
    def __init__(self, record):
        self.record = record


def derive3(w1: WordLike, w2: WordLike = "", w3: WordLike = ""):
    """Derivation of Circ(w1, w2, w3) in the O_3 grammar, or a Counterexample record."""
    parts = tuple(as_text(w) for w in (w1, w2, w3))
    if not in_On("".join(parts)):
        raise NotInOn("".join(parts), 3)
    g = grammar_for(3)

    def fail(sub):
        _, scanned = _search(tuple(sub), 3)
        raise _Stop(Counterexample(tuple(sub), scanned))

    try:
        return _derive(parts, g, find_split3, fail)
    except _Stop as stop:
        return stop.record
