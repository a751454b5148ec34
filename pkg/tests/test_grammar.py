import math

import pytest
from hypothesis import given

from mixforge.errors import ArityMismatch, ResourceBound
from mixforge.grammar import (
    AXIOM,
    MERGE,
    PAIR,
    START,
    Arrangement,
    DerivationTree,
    RuleFamily,
    axiom_tree,
    check_step,
    closure_naive,
    enumerate_arrangements,
    enumerate_derivable,
    enumerate_derivable_by_length,
    first_failure,
    grammar_O2,
    grammar_O3,
    is_variable,
    language_words,
    start_tree,
    verify_tree,
)
from mixforge.words import displacement, enumerate_On_text, in_On

from .strategies import balanced_pair

G2, G3 = grammar_O2(), grammar_O3()


def A(*groups):
    return Arrangement(tuple(tuple(g.split()) for g in groups))


def test_arities():
    assert G2.arity == {"S": 1, "Inv": 2}
    assert G3.arity == {"S": 1, "Circ": 3}
    assert G2.axiom_yield == ("", "")
    assert G3.axiom_yield == ("", "", "")
    assert G2.terminals == "aAbB"


def test_family_membership():
    assert G2.family(PAIR, 1).contains(A("a x1", "x2 A"))
    assert G2.family(MERGE).contains(A("x1 y1", "x2 y2"))
    assert G3.family(MERGE).contains(A("x1 y1", "x2 y2", "x3 y3"))
    assert not G2.family(PAIR, 1).contains(A("b x1", "x2 B"))
    assert not G2.family(MERGE).contains(A("x1 x1", "x2 y2"))
    assert not G2.family(AXIOM).contains(A("", ""))


def _expected_count(k, rho):
    # k! orders times the number of ways to cut k items into rho ordered groups
    return math.factorial(k) * math.comb(k + rho - 1, rho - 1)


@pytest.mark.parametrize("g,kind,axis,count", [
    (G2, MERGE, None, 120), (G2, PAIR, 1, 120), (G2, PAIR, 2, 120), (G3, MERGE, None, 20160),
    (G3, PAIR, 3, 120 * 21),
])
def test_arrangement_counts(g, kind, axis, count):
    fam = g.family(kind, axis)
    arrs = enumerate_arrangements(fam)
    assert len(arrs) == count == _expected_count(len(fam.blocks), g.rho)
    assert len(set(arrs)) == len(arrs)
    for arr in arrs:
        assert fam.contains(arr)
        variables = [t for t in arr.tokens if is_variable(t)]
        assert len(variables) == len(set(variables))


def test_o3_merge_cut_patterns():
    # six blocks into three possibly empty groups: C(8, 2) cut patterns per order
    arrs = enumerate_arrangements(G3.family(MERGE))
    first_order = [a for a in arrs if a.tokens == ("x1", "x2", "x3", "y1", "y2", "y3")]
    assert len(first_order) == math.comb(8, 2) == 28


def test_arrangement_json_round_trip():
    for arr in enumerate_arrangements(G2.family(PAIR, 2))[:30]:
        assert Arrangement.from_json(arr.to_json()) == arr


def test_check_step_examples():
    assert check_step(("ab", "BA"), A("a x1", "x2 A"), [("b", "B")])
    assert check_step(("aA", ""), A("a x1 A x2", ""), [("", "")])
    assert check_step(("ab", "AB"), A("x1 y1", "x2 y2"), [("a", "A"), ("b", "B")])
    assert not check_step(("ab", "BA"), A("x1 a", "x2 A"), [("b", "B")])


def test_check_step_arity():
    with pytest.raises(ArityMismatch):
        check_step(("ab",), A("a x1", "x2 A"), [("b", "B")])
    with pytest.raises(ArityMismatch):
        check_step(("ab", "AB"), A("x1 y1", "x2 y2"), [("a", "A")])


def _ab_BA_tree(first_arr=A("a x1", "x2 A")):
    inner = DerivationTree(PAIR, ("b", "B"), A("x1 x2 b", "B"), (axiom_tree(G2),), 2)
    return DerivationTree(PAIR, ("ab", "BA"), first_arr, (inner,), 1)


def test_verify_examples():
    assert verify_tree(axiom_tree(G2), G2)
    assert verify_tree(_ab_BA_tree(), G2)
    bad = _ab_BA_tree(A("x1 a", "x2 A"))
    assert not verify_tree(bad, G2)
    assert first_failure(bad, G2) == ((), "yield does not match the arrangement of the children")


def test_verify_reports_deep_failure():
    inner = DerivationTree(PAIR, ("b", "B"), A("x1 x2 b", "B"), (axiom_tree(G2),), 1)
    tree = DerivationTree(PAIR, ("ab", "BA"), A("a x1", "x2 A"), (inner,), 1)
    path, reason = first_failure(tree, G2)
    assert path == (0,) and "arrangement" in reason


def test_verify_structure_errors():
    assert not verify_tree(DerivationTree(AXIOM, ("a", "A")), G2)
    assert not verify_tree(DerivationTree(MERGE, ("", ""), A("x1 y1", "x2 y2"),
                                          (axiom_tree(G2),)), G2)
    assert not verify_tree(DerivationTree("loop", ("", "")), G2)
    two = DerivationTree(PAIR, ("aA", ""), A("a x1 A x2", ""), (axiom_tree(G2),), 1)
    assert verify_tree(two, G2)
    assert not verify_tree(DerivationTree(PAIR, ("aA", ""), A("a x1 A x2", ""),
                                          (axiom_tree(G2),), 3), G2)


def test_start_root():
    two = DerivationTree(PAIR, ("a", "A"), A("a x1", "x2 A"), (axiom_tree(G2),), 1)
    root = start_tree(G2, two)
    assert root.yield_ == ("aA",)
    assert verify_tree(root, G2)
    fake = DerivationTree(START, ("Aa",), root.arrangement, (two,))
    assert not verify_tree(fake, G2)
    nested = DerivationTree(PAIR, ("aA", ""), A("x1 x2", ""), (root,), 1)
    assert not verify_tree(nested, G2)


def test_tree_json_format():
    tree = _ab_BA_tree()
    text = tree.dumps()
    assert text.startswith('{"rule":"pair","axis":1,"arrangement":{"tokens":["a","x1","x2","A"],'
                           '"splits":[2]},"children":[')
    assert " " not in text
    assert '"rule":"axiom","arrangement":null,"children":[],"yield":["",""]' in text
    assert DerivationTree.from_json(tree.to_json()) == tree


def test_tree_counts():
    tree = _ab_BA_tree()
    assert tree.count(PAIR) == 2 and tree.depth == 3


def test_closure_bound_0_and_2():
    assert enumerate_derivable(G2, 0) == {("", "")}
    got = enumerate_derivable(G2, 2)
    want = {("", "")} | {(w[:k], w[k:]) for w in ("aA", "Aa", "bB", "Bb") for k in range(3)}
    assert got == want and len(got) == 13


def test_closure_matches_naive_reference():
    assert enumerate_derivable(G2, 4) == closure_naive(G2, 4)
    assert enumerate_derivable(G3, 2) == closure_naive(G3, 2)


def test_closure_bound_4_projection():
    words = language_words(enumerate_derivable(G2, 4))
    assert words == set(enumerate_On_text(4, 2))
    assert len(words) == 1 + 4 + 36


def test_closure_desk_scale_equality():
    strata = enumerate_derivable_by_length(G2, 8)
    for L, tuples in strata.items():
        # every split of every word: (L + 1) tuples per word
        words = language_words(tuples)
        assert words == {w for w in enumerate_On_text(L, 2) if len(w) == L}
        assert len(tuples) == len(words) * (L + 1)


@pytest.mark.parametrize("g", [G2, G3])
def test_closure_sound(g):
    for t in enumerate_derivable(g, 6 if g is G2 else 4):
        assert len(t) == g.rho
        assert in_On("".join(t))
        assert displacement("".join(t), g.n) == (0,) * g.n


def test_closure_resource_bound():
    with pytest.raises(ResourceBound):
        enumerate_derivable(G2, 12, cap=1000)
    with pytest.raises(ValueError):
        enumerate_derivable(G2, -2)


@given(balanced_pair(2, 3))
def test_small_pairs_are_derivable(pair):
    assert pair in enumerate_derivable(G2, 6)


def test_rule_family_blocks():
    assert RuleFamily(PAIR, 2, 2, 2).blocks == ("x1", "x2", "b", "B")
    assert RuleFamily(MERGE, 3, 3).blocks == ("x1", "x2", "x3", "y1", "y2", "y3")
    assert enumerate_arrangements(G2.family(START)) == (A("x1 x2"),)
    assert enumerate_arrangements(G2.family(AXIOM)) == ()
