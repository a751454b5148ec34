import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixforge.errors import (
    AmbiguousTurn,
    AntiparallelTangents,
    NotClosed,
    NotEmbedded,
    OddLength,
    ZeroVector,
)
from mixforge.geometry import (
    LatticePath,
    classify_pair,
    edge_directions,
    is_embedded,
    link_cycle_degree,
    rotate_path,
    rotation_number,
    self_intersections,
    simplify_loop,
    to_path,
    winding_number,
)
from mixforge.words import displacement, enumerate_On_text, in_On

from .oracles import coincident_pairs, self_avoiding_loops, float_winding, has_antiparallel, points_of
from .strategies import balanced, balanced_pair, words

FIG1 = "abbAbaBaBBBAbA"


def embedded_loops(max_len):
    return [w for w in enumerate_On_text(max_len, 2) if w and is_embedded(to_path(w))]


EMBEDDED_10 = embedded_loops(10)


def test_to_path_square():
    assert to_path("abAB").points == ((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))


def test_to_path_fig1():
    p = to_path(FIG1)
    assert len(p.points) == 15 and p.closed
    assert list(p.points) == points_of(FIG1)


def test_to_path_empty():
    assert to_path("").points == ((0, 0),)


def test_to_path_3d():
    assert to_path("acC", 3).points[-1] == (1, 0, 0)


@given(words(2, 10))
def test_closed_iff_balanced(w):
    assert to_path(w).closed == in_On(w)


def test_closed_iff_balanced_enumerated():
    for w in enumerate_On_text(8, 2):
        assert to_path(w).closed
        assert not to_path(w + "a").closed


def test_path_json_round_trip():
    p = to_path(FIG1)
    assert LatticePath.from_json(p.to_json()) == p


def test_self_intersections_square():
    assert self_intersections(to_path("abAB")) == []


def test_self_intersections_aAaA():
    # q = 2 sits on the base point, so (0, 2) is the p-q pair and is left out
    recs = self_intersections(to_path("aAaA"))
    assert [(r.t1, r.t2, r.case_label) for r in recs] == [(1, 3, "case5")]


def test_self_intersections_double_square():
    recs = {(r.t1, r.t2): r.case_label for r in self_intersections(to_path("abABabAB"))}
    assert (0, 4) not in recs
    assert recs[(1, 5)] == "case5"


def test_self_intersections_odd_length():
    with pytest.raises(OddLength):
        self_intersections(LatticePath(((0, 0), (1, 0), (1, 1), (0, 0))))


def test_self_intersections_open():
    with pytest.raises(NotClosed):
        self_intersections(to_path("ab"))


@given(balanced_pair(2, 6))
def test_intersections_match_oracle(pair):
    w1, w2 = pair
    w = w1 + w2
    recs = self_intersections(to_path(w), q=len(w1))
    got = {(r.t1, r.t2) for r in recs}
    want = {p for p in coincident_pairs(w) if p != (0, len(w1))}
    assert got == want
    for r in recs:
        assert r.case_label == classify_pair(r.t1, r.t2, len(w1), len(w))


@pytest.mark.parametrize("t1,t2,q,m,label", [
    (0, 2, 4, 8, "case1"), (0, 4, 4, 8, "pq"), (0, 6, 4, 8, "case2"),
    (1, 4, 4, 8, "case3"), (4, 6, 4, 8, "case3"), (1, 3, 4, 8, "case4"),
    (5, 7, 4, 8, "case4"), (1, 5, 4, 8, "case5"),
])
def test_classify(t1, t2, q, m, label):
    assert classify_pair(t1, t2, q, m) == label


def test_simplify_aA():
    out = simplify_loop("aA", "")
    assert (out.w1, out.w2) == ("", "")
    assert len(out.deletions) == 1 and out.deletions[0].removed == "aA"
    assert out.split is None


def test_simplify_embedded():
    out = simplify_loop("ab", "AB")
    assert out.deletions == () and out.embedded and out.split is None


def test_simplify_case5():
    out = simplify_loop("abAB", "abAB")
    t1, t2 = out.split
    assert t1 < len(out.w1) < t2


@given(balanced_pair(2, 7))
def test_simplify_properties(pair):
    w1, w2 = pair
    out = simplify_loop(w1, w2)
    removed = sum(len(d.removed) for d in out.deletions)
    assert len(out.w1) + len(out.w2) == len(w1) + len(w2) - removed
    for d in out.deletions:
        assert in_On(d.removed)
    if out.split is None:
        rest = out.w1 + out.w2
        if rest:
            # only the p-q coincidence may remain
            assert self_intersections(to_path(rest), q=len(out.w1)) == []
        assert out.embedded == (not rest or is_embedded(to_path(rest)))
    else:
        t1, t2 = out.split
        pts = to_path(out.w1 + out.w2).points
        assert pts[t1] == pts[t2] and 0 < t1 < len(out.w1) < t2


def test_winding_examples():
    assert winding_number([(1, 0), (0, 1), (-1, 0), (0, -1)]) == 1
    assert winding_number([(1, 0), (0, -1), (-1, 0), (0, 1)]) == -1
    assert winding_number([(1, 0), (2, 1)]) == 0
    assert winding_number([]) == 0


def test_winding_errors():
    with pytest.raises(ZeroVector) as info:
        winding_number([(1, 0), (0, 0)])
    assert info.value.index == 1
    with pytest.raises(AmbiguousTurn):
        winding_number([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(NotClosed):
        winding_number([(1, 0), (0, 1), (-1, 0)], closed=True)


def test_winding_fig1_chords():
    chords = edge_directions(to_path(FIG1))
    assert not has_antiparallel(chords, closed=False)
    assert has_antiparallel(chords, closed=True)  # last step A undoes first step a
    assert winding_number(chords, closed=False) == float_winding(chords, closed=False)


vectors = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda v: v != (0, 0))


@given(st.lists(vectors, min_size=1, max_size=12))
def test_winding_matches_float_oracle(vs):
    for closed in (True, False):
        if has_antiparallel(vs, closed):
            continue
        assert winding_number(vs, closed) == float_winding(vs, closed)


@given(st.lists(vectors, min_size=1, max_size=12))
def test_winding_reversal(vs):
    if has_antiparallel(vs, True):
        return
    assert winding_number([(-x, -y) for x, y in reversed(vs)]) == -winding_number(vs)
    assert winding_number(list(reversed(vs))) == -winding_number(vs)


def test_embedded_filter_matches_walk_oracle():
    assert sorted(EMBEDDED_10) == sorted(self_avoiding_loops(10))


def test_rotation_number_embedded():
    assert len(EMBEDDED_10) > 0
    for w in EMBEDDED_10:
        r = rotation_number(to_path(w))
        assert r in (1, -1), w
        assert r == float_winding(edge_directions(to_path(w)))


def test_is_embedded():
    assert is_embedded(to_path("abAB"))
    assert not is_embedded(to_path("aA"))
    assert not is_embedded(to_path("aAbB"))
    assert not is_embedded(to_path("ab"))


def test_link_degree_square():
    rep = link_cycle_degree(to_path("abAB"), "first")
    assert rep.degree == 0 and rep.case_class == "case3" and rep.cycle_id == "alpha_beta"
    assert rep.u_alpha == (1, 0) and rep.u_beta == (0, 1)


def test_link_degree_errors():
    with pytest.raises(NotEmbedded):
        link_cycle_degree(to_path("aAbB"))
    with pytest.raises(AntiparallelTangents):
        link_cycle_degree(to_path("abAABa"))  # first step a, last step of the half A
    with pytest.raises(OddLength):
        link_cycle_degree(LatticePath(((0, 0), (1, 0), (1, 1), (0, 0))))


def _tangents_antiparallel(w, half):
    q, m = len(w) // 2, len(w)
    first, last = (w[0], w[q - 1]) if half == "first" else (w[q], w[m - 1])
    return first.swapcase() == last


@pytest.mark.parametrize("half", ["first", "second"])
def test_link_degree_errors_exactly_on_antiparallel(half):
    for w in EMBEDDED_10:
        if _tangents_antiparallel(w, half):
            with pytest.raises(AntiparallelTangents):
                link_cycle_degree(to_path(w), half)
        else:
            link_cycle_degree(to_path(w), half)


@pytest.mark.parametrize("half", ["first", "second"])
def test_link_degree_rotation_invariant(half):
    for w in EMBEDDED_10:
        if _tangents_antiparallel(w, half):
            continue
        base = link_cycle_degree(to_path(w), half)
        for k in (1, 2, 3):
            assert link_cycle_degree(rotate_path(to_path(w), k), half).degree == base.degree


def test_link_degree_matches_oracle_and_reversal():
    for w in EMBEDDED_10:
        if _tangents_antiparallel(w, "first"):
            continue
        rep = link_cycle_degree(to_path(w), "first")
        assert rep.degree == float_winding(rep.chords)
        assert winding_number(list(reversed(rep.chords))) == -rep.degree
        assert rep.case_class == {1: "case1", -1: "case2", 0: "case3"}[max(-1, min(1, rep.degree))]


def test_positive_and_negative_degrees_exist():
    # search for a first half whose chords turn a full revolution, confirm with the oracle
    found = {}
    for w in self_avoiding_loops(14):
        if len(w) % 2:
            continue
        if _tangents_antiparallel(w, "first"):
            continue
        q = len(w) // 2
        chords = edge_directions(to_path(w))[:q]
        sign = float_winding(chords)
        if sign and sign not in found:
            found[sign] = w
            assert link_cycle_degree(to_path(w), "first").degree == sign
    assert set(found) == {1, -1}


def test_link_degree_delta():
    w = EMBEDDED_10[-1]
    rep = link_cycle_degree(to_path(w), "second", delta=2)
    assert rep.cycle_id == "gamma_delta" and len(rep.chords) == len(w) // 2 - 1
    with pytest.raises(ValueError):
        link_cycle_degree(to_path(w), "first", delta=0)
