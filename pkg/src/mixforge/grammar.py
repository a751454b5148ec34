"""Multiple context-free grammars for O_2 and O_3.

Rule families follow the block-arrangement reading of ``perm``: a head tuple
is any distribution of the listed blocks (body variables and single terminal
letters) over the head components, each block used once, in any order, and
never split.  Variables are named ``x1..x3`` (first child) and ``y1..y3``
(second child).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import ArityMismatch, ResourceBound
from .words import ALPHABET, alphabet, enumeration_cap

AXIOM, PAIR, MERGE, START = "axiom", "pair", "merge", "start"


def is_variable(token: str) -> bool:
    return len(token) == 2 and token[0] in "xy"


@dataclass(frozen=True)
class Arrangement:
    """Blocks distributed over head components; ``groups[k]`` builds component k."""

    groups: tuple

    @property
    def tokens(self) -> tuple:
        return tuple(t for g in self.groups for t in g)

    @property
    def splits(self) -> tuple:
        out, pos = [], 0
        for g in self.groups[:-1]:
            pos += len(g)
            out.append(pos)
        return tuple(out)

    @classmethod
    def from_tokens(cls, tokens, splits) -> "Arrangement":
        bounds = [0, *splits, len(tokens)]
        return cls(tuple(tuple(tokens[a:b]) for a, b in zip(bounds, bounds[1:])))

    def apply(self, bindings: dict) -> tuple:
        return tuple(
            "".join(bindings[t] if is_variable(t) else t for t in g) for g in self.groups
        )

    def well_formed(self) -> bool:
        vars_ = [t for t in self.tokens if is_variable(t)]
        return len(vars_) == len(set(vars_))

    def to_json(self) -> dict:
        return {"tokens": list(self.tokens), "splits": list(self.splits)}

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        return cls.from_tokens(tuple(data["tokens"]), tuple(data["splits"]))

    def __str__(self):
        return ", ".join(f"t{k + 1}=" + ("".join(g) or "ε") for k, g in enumerate(self.groups))


@dataclass(frozen=True)
class RuleFamily:
    kind: str
    head_arity: int
    body_arity: int = 0
    axis: Optional[int] = None

    @property
    def blocks(self) -> tuple:
        xs = tuple(f"x{i + 1}" for i in range(self.body_arity))
        if self.kind == PAIR:
            gen = ALPHABET[2 * (self.axis - 1)]
            return xs + (gen, gen.upper())
        if self.kind == MERGE:
            return xs + tuple(f"y{i + 1}" for i in range(self.body_arity))
        if self.kind == START:
            return xs
        return ()

    def contains(self, arr: Arrangement) -> bool:
        if self.kind == AXIOM:
            return False
        if len(arr.groups) != self.head_arity:
            return False
        return sorted(arr.tokens) == sorted(self.blocks) and arr.well_formed()


def _compositions(n_items, n_groups):
    """Cut-position tuples splitting n items into n_groups consecutive (possibly empty) groups."""
    return list(itertools.combinations_with_replacement(range(n_items + 1), n_groups - 1))


@lru_cache(maxsize=None)
def _arrangements(blocks: tuple, head_arity: int) -> tuple:
    seen = set()
    out = []
    comps = _compositions(len(blocks), head_arity)
    for perm in itertools.permutations(blocks):
        for cuts in comps:
            arr = Arrangement.from_tokens(perm, cuts)
            if arr not in seen:
                seen.add(arr)
                out.append(arr)
    return tuple(out)


def enumerate_arrangements(family: RuleFamily) -> tuple:
    """All distinct arrangements of the family, in canonical order.

    Canonical order: block permutations in lexicographic order of the
    family's block list, then cut positions in lexicographic order.
    """
    if family.kind == AXIOM:
        return ()
    if family.kind == START:
        return (Arrangement((family.blocks,)),)
    return _arrangements(family.blocks, family.head_arity)


@dataclass(frozen=True)
class Grammar:
    name: str
    n: int
    start: str
    nonterminal: str
    arity: dict
    families: tuple

    @property
    def rho(self) -> int:
        return self.arity[self.nonterminal]

    @property
    def terminals(self) -> str:
        return alphabet(self.n)

    def family(self, kind: str, axis: int | None = None) -> RuleFamily:
        for f in self.families:
            if f.kind == kind and (kind != PAIR or f.axis == axis):
                return f
        raise KeyError((kind, axis))

    @property
    def axiom_yield(self) -> tuple:
        return ("",) * self.rho


def _build(name, n, nt, rho):
    fams = [RuleFamily(START, 1, rho)]
    fams += [RuleFamily(PAIR, rho, rho, axis) for axis in range(1, n + 1)]
    fams += [RuleFamily(MERGE, rho, rho), RuleFamily(AXIOM, rho)]
    return Grammar(name, n, "S", nt, {"S": 1, nt: rho}, tuple(fams))


def grammar_O2() -> Grammar:
    return _build("G", 2, "Inv", 2)


def grammar_O3() -> Grammar:
    return _build("G3", 3, "Circ", 3)


def grammar_for(n: int) -> Grammar:
    if n == 2:
        return grammar_O2()
    if n == 3:
        return grammar_O3()
    raise ValueError(f"no grammar for n={n}")


def check_step(head_yield, arrangement: Arrangement, child_yields) -> bool:
    """Does substituting the children's components into the arrangement give ``head_yield``?"""
    head_yield = tuple(head_yield)
    if len(arrangement.groups) != len(head_yield):
        raise ArityMismatch(
            f"arrangement has {len(arrangement.groups)} groups, head has {len(head_yield)}"
        )
    bindings = {}
    for prefix, child in zip("xy", child_yields):
        for i, comp in enumerate(child):
            bindings[f"{prefix}{i + 1}"] = comp
    needed = {t for t in arrangement.tokens if is_variable(t)}
    if not needed <= bindings.keys():
        raise ArityMismatch(f"arrangement uses {sorted(needed - bindings.keys())} not bound by children")
    return arrangement.apply(bindings) == head_yield


# -- derivation trees ---------------------------------------------------------


@dataclass(frozen=True)
class DerivationTree:
    rule: str
    yield_: tuple
    arrangement: Optional[Arrangement] = None
    children: tuple = ()
    axis: Optional[int] = None

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def count(self, rule: str) -> int:
        return sum(1 for node in self.nodes() if node.rule == rule)

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    def to_json(self) -> dict:
        out = {"rule": self.rule}
        if self.rule == PAIR:
            out["axis"] = self.axis
        out["arrangement"] = self.arrangement.to_json() if self.arrangement else None
        out["children"] = [c.to_json() for c in self.children]
        out["yield"] = list(self.yield_)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=True)

    @classmethod
    def from_json(cls, data) -> "DerivationTree":
        arr = Arrangement.from_json(data["arrangement"]) if data.get("arrangement") else None
        return cls(
            data["rule"],
            tuple(data["yield"]),
            arr,
            tuple(cls.from_json(c) for c in data.get("children", ())),
            data.get("axis"),
        )


def axiom_tree(g: Grammar) -> DerivationTree:
    return DerivationTree(AXIOM, g.axiom_yield)


def start_tree(g: Grammar, child: DerivationTree) -> DerivationTree:
    arr = enumerate_arrangements(g.family(START))[0]
    return DerivationTree(START, ("".join(child.yield_),), arr, (child,))


def first_failure(tree: DerivationTree, g: Grammar, _path=(), _root=True):
    """Path (tuple of child indices) and reason of the first invalid node, or None."""
    rho = g.rho
    rule = tree.rule
    expected_children = {AXIOM: 0, PAIR: 1, MERGE: 2, START: 1}.get(rule)
    if expected_children is None:
        return _path, f"unknown rule {rule!r}"
    if len(tree.children) != expected_children:
        return _path, f"{rule} node has {len(tree.children)} children"
    if rule == START:
        if not _root:
            return _path, "start rule below the root"
        fam = g.family(START)
    elif rule == AXIOM:
        if tuple(tree.yield_) != g.axiom_yield:
            return _path, "axiom yield is not all-empty"
        return None
    elif rule == PAIR:
        if tree.axis not in range(1, g.n + 1):
            return _path, f"bad axis {tree.axis}"
        fam = g.family(PAIR, tree.axis)
    else:
        fam = g.family(MERGE)
    if rule != START and len(tree.yield_) != rho:
        return _path, f"yield arity {len(tree.yield_)} != {rho}"
    for child in tree.children:
        if child.rule == START or len(child.yield_) != rho:
            return _path, "child is not a tuple-valued node"
    if tree.arrangement is None or not fam.contains(tree.arrangement):
        return _path, f"arrangement not in the {rule} family"
    try:
        ok = check_step(tree.yield_, tree.arrangement, [c.yield_ for c in tree.children])
    except ArityMismatch as exc:
        return _path, str(exc)
    if not ok:
        return _path, "yield does not match the arrangement of the children"
    for i, child in enumerate(tree.children):
        fail = first_failure(child, g, _path + (i,), False)
        if fail is not None:
            return fail
    return None


def verify_tree(tree: DerivationTree, g: Grammar) -> bool:
    return first_failure(tree, g) is None


# -- bounded bottom-up closure --------------------------------------------------


@lru_cache(maxsize=None)
def _perm_cut_table(k: int, rho: int):
    comps = _compositions(k, rho)
    return tuple(itertools.permutations(range(k))), tuple(
        tuple(zip((0,) + c, c + (k,))) for c in comps
    )


def _arrange_all(blocks, rho, out):
    """Add every block arrangement of the nonempty ``blocks`` over rho components to ``out``."""
    blocks = [b for b in blocks if b]
    perms, spans = _perm_cut_table(len(blocks), rho)
    seen = set()
    for perm in perms:
        seq = tuple(blocks[i] for i in perm)
        if seq in seen:
            continue
        seen.add(seq)
        for span in spans:
            out.add(tuple("".join(seq[a:b]) for a, b in span))


def _check_bound(g, bound, cap):
    cap = enumeration_cap(cap)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if (2 * g.n) ** bound > cap:
        raise ResourceBound(f"(2n)^bound = {(2 * g.n) ** bound} exceeds cap {cap}")


def enumerate_derivable_by_length(g: Grammar, max_total_length: int, cap=None) -> dict:
    """Derivable tuples of the grammar's tuple nonterminal, grouped by total length.

    Computed stratum by stratum: merging with a length-2 tuple only ever
    produces PairInsert results, and merging with the axiom only regroups, so
    each stratum is PairInsert of the stratum two below plus Merge of strata
    of length >= 4 each.  The result is the full bounded fixpoint.
    """
    _check_bound(g, max_total_length, cap)
    rho = g.rho
    pairs = [ALPHABET[2 * i] + ALPHABET[2 * i + 1] for i in range(g.n)]
    strata = {0: {g.axiom_yield}}
    for L in range(2, max_total_length + 1, 2):
        out = set()
        for t in strata[L - 2]:
            for gen, inv in pairs:
                _arrange_all([*t, gen, inv], rho, out)
        for i in range(4, L // 2 + 1, 2):
            j = L - i
            if j < 4:
                continue
            left, right = sorted(strata[i]), sorted(strata[j])
            for a_idx, a in enumerate(left):
                for b in right[a_idx:] if i == j else right:
                    _arrange_all([*a, *b], rho, out)
        strata[L] = out
    return {L: frozenset(s) for L, s in strata.items()}


def enumerate_derivable(g: Grammar, max_total_length: int, cap=None) -> frozenset:
    strata = enumerate_derivable_by_length(g, max_total_length, cap)
    return frozenset().union(*strata.values())


def closure_naive(g: Grammar, max_total_length: int) -> frozenset:
    """Textbook fixpoint iteration over every rule instance; slow, used as a reference."""
    rho = g.rho
    pair_fams = [f for f in g.families if f.kind == PAIR]
    merge_arrs = enumerate_arrangements(g.family(MERGE))
    known = {g.axiom_yield}
    while True:
        new = set()
        items = sorted(known)
        for t in items:
            binding = {f"x{i + 1}": c for i, c in enumerate(t)}
            for fam in pair_fams:
                if sum(map(len, t)) + 2 > max_total_length:
                    continue
                for arr in enumerate_arrangements(fam):
                    new.add(arr.apply(binding))
        for a in items:
            for b in items:
                if sum(map(len, a)) + sum(map(len, b)) > max_total_length:
                    continue
                binding = {f"x{i + 1}": c for i, c in enumerate(a)}
                binding.update({f"y{i + 1}": c for i, c in enumerate(b)})
                for arr in merge_arrs:
                    new.add(arr.apply(binding))
        if new <= known:
            return frozenset(known)
        known |= new
        assert all(len(t) == rho for t in known)


def language_words(tuples) -> set:
    """Rule 1 applied to every tuple: the set of concatenations."""
    return {"".join(t) for t in tuples}
