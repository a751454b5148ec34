"""Command line entry point: ``mixforge <command> ...``.

Reports go to stdout as JSON lines and are identical between runs with the
same arguments; timings and a human summary go to stderr.  Exit codes: 0 ok,
1 negative answer, 2 usage or parse error, 3 theorem violation or
counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from multiprocessing import Pool
from typing import Optional

from . import chain_complex as cc
from .errors import Incompleteness, InvalidCharacter, MixforgeError, NotInOn, ResourceBound
from .grammar import (
    PAIR,
    DerivationTree,
    enumerate_derivable_by_length,
    first_failure,
    grammar_for,
)
from .splitter import (
    Counterexample,
    SplitWitness,
    derive,
    derive3,
    find_alternating_split3,
)
from .svg import render_svg
from .words import Word, brute_force_On, displacement, enumeration_cap, enumerate_On_text, in_On

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    n: int = 2
    max_len: Optional[int] = None
    cap: Optional[int] = None
    workers: int = 1
    mode: str = "general"
    out: Optional[str] = None
    seed: int = 0


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, separators=(",", ":")) + "\n")


def _log(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _write_findings(path: str, config: RunConfig, findings: list) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump({"config": asdict(config), "findings": findings}, fh, indent=1)
        fh.write("\n")
    _log(f"wrote {len(findings)} finding(s) to {path}")


def _words(args_words, n):
    return [Word(w, n).text for w in args_words]


# -- member --------------------------------------------------------------------


def cmd_member(args, config) -> int:
    w = Word(args.word, config.n)
    ok = in_On(w)
    _emit({"command": "member", "n": config.n, "word": w.text, "member": ok,
           "displacement": list(displacement(w, config.n)), "seed": config.seed})
    _log(f"{w.text or 'ε'}: {'member' if ok else 'not a member'} of O_{config.n}")
    return EXIT_OK if ok else EXIT_NO


# -- derive --------------------------------------------------------------------


def _checked(tree: DerivationTree, n: int, total: int) -> Optional[str]:
    fail = first_failure(tree, grammar_for(n))
    if fail is not None:
        return f"verifier rejected node {list(fail[0])}: {fail[1]}"
    if tree.count(PAIR) != total // 2:
        return f"{tree.count(PAIR)} PairInsert nodes for length {total}"
    return None


def cmd_derive(args, config) -> int:
    n = config.n
    rho = n
    parts = _words(args.parts, n)
    if len(parts) > rho:
        raise ValueError(f"expected at most {rho} components, got {len(parts)}")
    parts = parts + [""] * (rho - len(parts))
    word = "".join(parts)
    if not in_On(word):
        raise NotInOn(word, n)
    out_path = config.out or "counterexample.json"
    if n == 2:
        try:
            tree = derive(*parts)
        except Incompleteness as exc:
            finding = {"kind": "incompleteness", "parts": list(exc.parts),
                       "searched": exc.searched}
            _write_findings(out_path, config, [finding])
            _emit(finding)
            return EXIT_VIOLATION
    else:
        tree = derive3(*parts)
        if isinstance(tree, Counterexample):
            _write_findings(out_path, config, [tree.to_json()])
            _emit(tree.to_json())
            return EXIT_VIOLATION
    problem = _checked(tree, n, len(word))
    if problem:
        finding = {"kind": "verification", "parts": parts, "problem": problem}
        _write_findings(out_path, config, [finding])
        _emit(finding)
        return EXIT_VIOLATION
    sys.stdout.write(tree.dumps() + "\n")
    _log(f"derived {parts} with {tree.count(PAIR)} PairInsert node(s), depth {tree.depth}")
    return EXIT_OK


# -- sweep ---------------------------------------------------------------------


def _sweep_one(task):
    """Process one word; returns (word, splits processed, list of findings)."""
    n, mode, w = task
    findings = []
    if n == 2:
        for k in range(len(w) + 1):
            parts = (w[:k], w[k:])
            try:
                tree = derive(*parts)
            except MixforgeError as exc:
                findings.append({"kind": type(exc).__name__, "parts": list(parts),
                                 "detail": str(exc)})
                continue
            problem = _checked(tree, 2, len(w))
            if problem:
                findings.append({"kind": "verification", "parts": list(parts), "problem": problem})
        return w, len(w) + 1, findings, None
    if mode == "alternating":
        if len(w) < 4:
            return w, 1, findings, None
        wit = find_alternating_split3(w)
        strict = find_alternating_split3(w, nonempty_pieces=True) is not None
        if wit is None:
            findings.append({"kind": "no_alternating_split", "word": w})
        return w, 1, findings, strict
    tree = derive3(w, "", "")
    if isinstance(tree, Counterexample):
        findings.append(tree.to_json())
    else:
        problem = _checked(tree, 3, len(w))
        if problem:
            findings.append({"kind": "verification", "parts": [w, "", ""], "problem": problem})
    return w, 1, findings, None


def cmd_sweep(args, config) -> int:
    n, mode = config.n, config.mode
    if n == 2 and mode == "alternating":
        raise argparse.ArgumentTypeError("--mode alternating applies to -n 3 only")
    start = time.perf_counter()
    tasks = ((n, mode, w) for w in enumerate_On_text(config.max_len, n, config.cap))
    words = splits = strict = 0
    per_length = {}
    findings = []

    def consume(results):
        nonlocal words, splits, strict
        for w, k, found, strict_ok in results:
            words += 1
            splits += k
            per_length[len(w)] = per_length.get(len(w), 0) + 1
            strict += bool(strict_ok)
            findings.extend(found)

    if config.workers > 1:
        with Pool(config.workers) as pool:
            consume(pool.imap(_sweep_one, tasks, chunksize=64))
    else:
        consume(map(_sweep_one, tasks))
    report = {"command": "sweep", "n": n, "mode": mode, "max_len": config.max_len,
              "words": words, "by_length": {str(k): v for k, v in sorted(per_length.items())},
              "failures": len(findings), "seed": config.seed}
    if n == 2:
        report["splits"] = splits
    if mode == "alternating" and n == 3:
        report["strict_nonempty_pieces"] = strict
    _emit(report)
    for f in findings[:20]:
        _emit(f)
    _log(f"sweep n={n} mode={mode}: {words} words, {len(findings)} failure(s), "
         f"{time.perf_counter() - start:.1f}s")
    if findings:
        _write_findings(config.out or "sweep_findings.json", config, findings)
        return EXIT_VIOLATION
    return EXIT_OK


# -- enumerate -------------------------------------------------------------------


def cmd_enumerate(args, config) -> int:
    n, bound = config.n, config.max_len
    cap = enumeration_cap(config.cap)
    start = time.perf_counter()
    words = {}
    for w in enumerate_On_text(bound, n, cap):
        words.setdefault(len(w), set()).add(w)
    t_enum = time.perf_counter()
    strata = enumerate_derivable_by_length(grammar_for(n), bound, cap)
    closure = {}
    for length, tuples in strata.items():
        closure.setdefault(length, set()).update("".join(t) for t in tuples)
    t_closure = time.perf_counter()
    brute = {m: len(brute_force_On(m, n)) for m in range(0, bound + 1, 2)}
    lengths = list(range(0, bound + 1, 2))
    extra = sorted(w for m in lengths for w in closure.get(m, set()) - words.get(m, set()))
    missing = sorted(w for m in lengths for w in words.get(m, set()) - closure.get(m, set()))
    counts_agree = all(brute[m] == len(words.get(m, ())) for m in lengths)
    report = {
        "command": "enumerate", "n": n, "max_len": bound,
        "closure_sizes": [len(closure.get(m, ())) for m in lengths],
        "language_sizes": [len(words.get(m, ())) for m in lengths],
        "brute_force_sizes": [brute[m] for m in lengths],
        "tuple_counts": [len(strata.get(m, ())) for m in lengths],
        "closure_subset": not extra, "language_subset": not missing,
        "equal": not extra and not missing, "counts_agree": counts_agree,
        "extra_sample": extra[:10], "missing_sample": missing[:10], "seed": config.seed,
    }
    _emit(report)
    _log(f"enumeration {t_enum - start:.1f}s, closure {t_closure - t_enum:.1f}s; "
         f"{'equal' if report['equal'] else 'NOT equal'}")
    if extra or not counts_agree or (n == 2 and missing):
        if extra or missing:
            _write_findings(config.out or "enumerate_findings.json", config,
                            [{"extra": extra, "missing": missing}])
        return EXIT_VIOLATION
    return EXIT_NO if missing else EXIT_OK


# -- complex ------------------------------------------------------------------------


def complex_checks(c=None) -> list:
    """(name, passed) for every structural claim about the complex."""
    c = c or cc.build_complex()
    out = [("dd_zero", cc.verify_dd_zero(c))]
    for chain in ({"E": 1, "F": -1}, {"G": 1, "H": -1}, {"I": 1, "J": -1}, {"K": 1, "L": -1},
                  {"A": 1, "B": 1, "C": 1, "D": 1}):
        name = "".join(f"{'+' if k > 0 else '-'}{cell}" for cell, k in chain.items()).lstrip("+")
        out.append((f"cycle {name}", cc.is_cycle(c, chain)))
    res = cc.is_boundary(c, {"alpha": 1, "beta": 1})
    out.append(("boundary alpha+beta = d(E)", bool(res) and res.certificate == {"E": 1}))
    g1, g4 = cc.link_graph(c, "p1"), cc.link_graph(c, "p4")
    out.append(("Lk(p1) has 4 vertices, 8 edges", (len(g1.vertices), len(g1.edges)) == (4, 8)))
    out.append(("Lk(p4) has 4 vertices, 8 edges", (len(g4.vertices), len(g4.edges)) == (4, 8)))
    out.append(("Lk(p1), Lk(p4) disjoint", cc.links_disjoint(g1, g4)))
    for g, cells in ((g1, "EF"), (g1, "IJ"), (g4, "GH"), (g4, "KL")):
        chain = {cells[0]: 1, cells[1]: -1}
        ends = {e.source for e in g.edges if e.cell in cells} | \
            {e.target for e in g.edges if e.cell in cells}
        out.append((f"{cells[0]}-{cells[1]} loop in Lk({g.base})",
                    not g.chain_boundary(chain) and len(ends) == 2))
    h = cc.homology_ranks(c)
    out.append(("euler characteristic 8",
                h.euler_characteristic == cc.euler_characteristic(c) == 8))
    return out


def cmd_complex(args, config) -> int:
    c = cc.build_complex()
    if args.dump:
        with open(args.dump, "w", encoding="ascii") as fh:
            fh.write(c.dumps())
        _log(f"wrote {args.dump}")
    checks = complex_checks(c)
    for name, ok in checks:
        _emit({"check": name, "status": "PASS" if ok else "FAIL"})
    h = cc.homology_ranks(c)
    _emit({"homology": list(h.betti), "torsion": {str(k): list(v) for k, v in h.torsion.items()}})
    if args.links:
        for v in c.zero_cells:
            g = cc.link_graph(c, v)
            rec = g.to_json()
            rec["counts"] = [len(g.vertices), len(g.edges)]
            _emit(rec)
            _log(f"{v}: {len(g.vertices)} vertices / {len(g.edges)} edges")
    failed = [name for name, ok in checks if not ok]
    _log(f"complex: {len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_VIOLATION if failed else EXIT_OK


# -- render ---------------------------------------------------------------------------


def cmd_render(args, config) -> int:
    parts = [Word(w, 2).text for w in args.parts]
    witness = None
    if args.witness:
        with open(args.witness, encoding="utf-8") as fh:
            witness = SplitWitness.from_json(json.load(fh))
        if "".join(witness.parts) != "".join(parts):
            raise ValueError("witness parts do not spell the given word")
    marks = {"p": 0, "q": len(parts[0])} if len(parts) > 1 else None
    svg = render_svg("".join(parts), witness, marks)
    if config.out:
        with open(config.out, "w", encoding="ascii") as fh:
            fh.write(svg)
        _log(f"wrote {config.out}")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------


def _dimension(text):
    n = int(text)
    if n not in (2, 3):
        raise argparse.ArgumentTypeError("-n must be 2 or 3")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mixforge", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=_dimension, default=2, help="number of letter pairs (2 or 3)")
    common.add_argument("--cap", type=int, default=None,
                        help="candidate-string cap (default $MIXFORGE_CAP or 10^7)")
    common.add_argument("--seed", type=int, default=0, help="recorded in reports")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("member", parents=[common], help="test membership in O_n")
    s.add_argument("word")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("derive", parents=[common], help="print a verified derivation tree")
    s.add_argument("parts", nargs="*", default=[])
    s.add_argument("--out", help="where to write a counterexample")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("sweep", parents=[common], help="derive every word up to a length")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--mode", choices=("general", "alternating"), default="general")
    s.add_argument("--out", help="where to write findings")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("enumerate", parents=[common], help="compare grammar closure with O_n")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--out", help="where to write a mismatch")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("complex", parents=[common], help="check the cell complex")
    s.add_argument("--dump", help="write the complex as JSON")
    s.add_argument("--links", action="store_true", help="print the vertex links")
    s.set_defaults(func=cmd_complex)

    s = sub.add_parser("render", parents=[common], help="draw a loop as SVG")
    s.add_argument("parts", nargs="+")
    s.add_argument("--witness", help="split witness JSON; colors the arcs")
    s.add_argument("--out", help="output file (default stdout)")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    config = RunConfig(
        command=args.command, n=args.n, max_len=getattr(args, "max_len", None),
        cap=args.cap, workers=getattr(args, "workers", 1),
        mode=getattr(args, "mode", "general"), out=getattr(args, "out", None), seed=args.seed,
    )
    if config.max_len is not None and config.max_len < 0:
        _log("error: --max-len must be non-negative")
        return EXIT_USAGE
    try:
        return args.func(args, config)
    except NotInOn as exc:
        _emit({"command": config.command, "error": "NotInOn", "detail": str(exc)})
        _log(f"error: {exc}")
        return EXIT_NO
    except (InvalidCharacter, ResourceBound, argparse.ArgumentTypeError, ValueError,
            OSError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
