"""Command-line front end.

Problem files are JSON::

    {"atoms": ["A", "C"],
     "impossible": ["A and not C"],
     "assessments": [{"expr": "C|A", "value": "9/10"}],
     "query": "A",
     "options": {"tolerance": "1/1099511627776", "seed": 0, "max_atoms": 16}}

Exit status: 0 on success (coherent, entailed, all checks pass), 1 on a
negative verdict, 2 on usage, schema or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coherence import assess, check_coherence
from .compound import build_table, canonical_key
from .dsl import parse, parse_formula
from .errors import CoherenceError, DSLSyntaxError, IncoherentBase, NotPConsistent
from .eventspace import EventSpace
from .propagation import DEFAULT_TOLERANCE, extension_interval, p_entails
from .quantity import format_rational, parse_rational
from .replication import format_report, run_suite

OK, NEGATIVE, USAGE = 0, 1, 2


class ProblemError(Exception):
    pass


class Problem:
    def __init__(self, data, max_atoms=None):
        if not isinstance(data, dict):
            raise ProblemError("problem file must hold a JSON object")
        unknown = set(data) - {"atoms", "impossible", "assessments", "query", "options"}
        if unknown:
            raise ProblemError(f"unknown fields: {', '.join(sorted(unknown))}")
        atoms = data.get("atoms")
        if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
            raise ProblemError("'atoms' must be a list of strings")
        imp = data.get("impossible", [])
        if not isinstance(imp, list) or not all(isinstance(f, str) for f in imp):
            raise ProblemError("'impossible' must be a list of formula strings")
        self.options = data.get("options", {})
        if not isinstance(self.options, dict):
            raise ProblemError("'options' must be an object")
        cap = max_atoms if max_atoms is not None else self.options.get("max_atoms", 16)
        self.space = EventSpace(atoms, [parse_formula(f) for f in imp], cap=int(cap))
        items = data.get("assessments", [])
        if not isinstance(items, list):
            raise ProblemError("'assessments' must be a list")
        self.pairs = []
        for k, it in enumerate(items):
            if not isinstance(it, dict) or set(it) != {"expr", "value"}:
                raise ProblemError(f"assessment {k} must have exactly 'expr' and 'value'")
            if not isinstance(it["expr"], str) or not isinstance(it["value"], (str, int)):
                raise ProblemError(f"assessment {k}: expr must be a string, value a rational string")
            try:
                v = parse_rational(it["value"])
            except (ValueError, TypeError, ZeroDivisionError) as e:
                raise ProblemError(f"assessment {k}: bad value {it['value']!r}") from e
            self.pairs.append((parse(it["expr"]).ast, v))
        q = data.get("query")
        if q is not None and not isinstance(q, str):
            raise ProblemError("'query' must be a string")
        self.query = parse(q).ast if q is not None else None

    def assessment(self):
        if not self.pairs:
            raise ProblemError("no assessments given")
        return assess(self.space, self.pairs)

    def context(self):
        return {canonical_key(e): v for e, v in self.pairs}

    def need_query(self):
        if self.query is None:
            raise ProblemError("this command needs a 'query'")
        return self.query


def load(path, max_atoms=None) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ProblemError(f"cannot read {path}: {e.strerror}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from e
    return Problem(data, max_atoms)


# -- commands: each returns (status, json report, text report) -------------


def cmd_check(p: Problem, args):
    a = p.assessment()
    rep = check_coherence(a)
    out = rep.to_json(a.labels())
    lines = [f"verdict: {rep.verdict}"]
    for depth, lv in enumerate(rep.trace):
        names = ", ".join(a.labels()[i] for i in lv.items)
        lines.append(f"level {depth}: {'feasible' if lv.feasible else 'infeasible'} on {names}")
    if rep.witness is not None:
        for i in rep.witness_items:
            lines.append(f"  stake {format_rational(rep.witness[i])} on {a.labels()[i]}")
    return (OK if rep.coherent else NEGATIVE), out, "\n".join(lines)


def cmd_extend(p: Problem, args):
    a = p.assessment()
    q = p.need_query()
    tol = parse_rational(args.tolerance or p.options.get("tolerance", DEFAULT_TOLERANCE))
    method = args.method or p.options.get("method", "lp")
    try:
        iv = extension_interval(a, q, p.context(), method=method, tolerance=tol)
    except IncoherentBase:
        rep = check_coherence(a)
        return NEGATIVE, {"query": canonical_key(q), "error": "incoherent base", "check": rep.to_json(a.labels())}, (
            "the premises are incoherent; no extension exists"
        )
    out = {"query": canonical_key(q), "interval": iv.to_json()}
    text = f"{canonical_key(q)}: {iv}"
    if iv.diagnostic:
        text += f"\nnote: {iv.diagnostic}"
    return OK, out, text


def cmd_table(p: Problem, args):
    q = p.need_query()
    t = build_table(q, p.space, p.context())
    rows = [
        {"constituent": c.label(), "value": format_rational(v), "conditioning": bool(inc)}
        for c, v, inc in t.rows()
    ]
    out = {"query": canonical_key(q), "rows": rows}
    width = max(len(r["constituent"]) for r in rows)
    lines = [canonical_key(q)]
    for r in rows:
        mark = "" if r["conditioning"] else "  (void)"
        lines.append(f"  {r['constituent'].ljust(width)}  {r['value']}{mark}")
    return OK, out, "\n".join(lines)


def cmd_entails(p: Problem, args):
    q = p.need_query()
    family = [e for e, _ in p.pairs]
    if not family:
        raise ProblemError("no premises given")
    try:
        ok = p_entails(family, q, p.space)
    except NotPConsistent:
        return NEGATIVE, {"query": canonical_key(q), "p_consistent": False, "entails": False}, (
            "premises are not p-consistent"
        )
    out = {"query": canonical_key(q), "p_consistent": True, "entails": ok}
    return (OK if ok else NEGATIVE), out, f"{'entailed' if ok else 'not entailed'}: {canonical_key(q)}"


def cmd_verify(p, args):
    opts = p.options if p is not None else {}
    seed = args.seed if args.seed is not None else int(opts.get("seed", 0))
    trials = args.trials if args.trials is not None else int(opts.get("trials", 100))
    if trials < 1:
        raise ProblemError("--trials must be positive")
    results = run_suite(seed, trials)
    ok = all(r.passed for r in results)
    out = {"seed": seed, "trials": trials, "passed": ok, "checks": [r.to_json() for r in results]}
    return (OK if ok else NEGATIVE), out, format_report(results)


COMMANDS = {
    "check": cmd_check,
    "extend": cmd_extend,
    "table": cmd_table,
    "entails": cmd_entails,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="condcoh", description="Coherence tools for conditional events.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("file", nargs="?", help="problem file (optional for verify)")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    ap.add_argument("--tolerance", help="bisection tolerance as n/d")
    ap.add_argument("--method", choices=["lp", "bisect"])
    ap.add_argument("--seed", type=int)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--max-atoms", type=int)
    ap.set_defaults(fmt="text")
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        if args.file is None and args.command != "verify":
            raise ProblemError(f"{args.command} needs a problem file")
        prob = load(args.file, args.max_atoms) if args.file else None
        status, out, text = COMMANDS[args.command](prob, args)
    except DSLSyntaxError as e:
        print(f"error: syntax: {e}", file=stderr)
        return USAGE
    except (ProblemError, CoherenceError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=stderr)
        return USAGE
    if args.fmt == "json":
        stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(text + "\n")
    return status


def main():
    sys.exit(run())
