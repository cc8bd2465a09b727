"""Command-line front end.

Exit codes: 0 true/valid/accepted, 1 false/invalid/rejected, 2 usage or
validation error, 3 decision budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import checker, decide
from .dynamics import UpdateMode
from .fixtures import FIXTURES, STORE_BATTERY, get_fixture
from .model import Model, ModelError, dump_model, load_model, natural_key
from .proofs import ScriptSyntaxError, check_proof, parse_script
from .syntax import FormulaSyntaxError, Not, atoms_of, closure, parse, render, sort_key

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _load(spec: str) -> Model:
    if spec in FIXTURES:
        return get_fixture(spec).model
    path = Path(spec)
    if not path.exists():
        raise _Usage(f"no fixture or file named {spec!r} (fixtures: {', '.join(sorted(FIXTURES))})")
    return load_model(path)


def _agents(text: str) -> list[str]:
    agents = [a.strip() for a in text.split(",") if a.strip()]
    if not agents:
        raise _Usage("--agents needs at least one agent name")
    return agents


def _worlds(ws) -> str:
    return "{" + ", ".join(sorted(ws, key=natural_key)) + "}"


def _blocks(p) -> str:
    return " ".join(_worlds(b) for b in p.blocks)


# --- subcommands -------------------------------------------------------------


def cmd_validate(args, out: TextIO) -> int:
    m = load_model(args.model)
    out.write(f"valid model: {len(m.worlds)} worlds, agents {', '.join(m.agents)}, props {', '.join(m.props)}\n")
    for a in m.agents:
        out.write(f"R_{a}: {_blocks(m.access[a])}\n")
    for i in m.agents:
        for j in m.agents:
            aw = ", ".join(p for p in m.props if p in m.awareness[(i, j)])
            out.write(f"A^{i}_{j} = {{{aw}}}  indist: {_blocks(m.indist(i, j))}\n")
    return EXIT_TRUE


def _check_one(m: Model, world: str, f, mode: UpdateMode, explain: bool, out: TextIO) -> bool:
    if explain:
        verdict, trace = checker.explain(m, world, f, mode)
        out.write(("true" if verdict else "false") + "\n")
        for entry in trace:
            block = entry.partition.block(world) if world in entry.partition.worlds else frozenset()
            out.write(
                f"  {render(entry.formula)}: block of {world} = {_worlds(block)}; "
                f"holds at {_worlds(entry.extension)}\n"
            )
        return verdict
    verdict = checker.satisfies(m, world, f, mode)
    out.write(("true" if verdict else "false") + "\n")
    return verdict


def cmd_check(args, out: TextIO) -> int:
    m = _load(args.model)
    mode = UpdateMode.parse(args.update_mode)
    if args.stdin:
        ok = True
        for raw in sys.stdin.read().splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            world, _, text = line.partition(" ")
            f = parse(text)
            verdict = checker.satisfies(m, world, f, mode)
            out.write(f"{world}\t{render(f)}\t{'true' if verdict else 'false'}\n")
            ok &= verdict
        return EXIT_TRUE if ok else EXIT_FALSE
    if args.world is None or args.formula is None:
        raise _Usage("check needs --world and --formula (or --stdin)")
    verdict = _check_one(m, args.world, parse(args.formula), mode, args.explain, out)
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_extension(args, out: TextIO) -> int:
    m = _load(args.model)
    ext = checker.extension(m, parse(args.formula), UpdateMode.parse(args.update_mode))
    out.write(" ".join(sorted(ext, key=natural_key)) + "\n")
    return EXIT_TRUE


def cmd_closure(args, out: TextIO) -> int:
    f = parse(args.formula)
    members = sorted(closure(f, _agents(args.agents)), key=sort_key)
    for g in members:
        out.write(render(g) + "\n")
    out.write(f"count: {len(members)}\n")
    return EXIT_TRUE


def cmd_prove(args, out: TextIO) -> int:
    text = Path(args.script).read_text(encoding="utf-8")
    verdict = check_proof(parse_script(text))
    out.write(str(verdict) + "\n")
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_decide(args, out: TextIO) -> int:
    f = parse(args.formula)
    agents = _agents(args.agents) if args.agents else None
    query = f if args.satisfiable else Not(f)
    res = decide.satisfiable(query, agents, args.max_atoms)
    if args.satisfiable:
        out.write(("satisfiable" if res else "unsat") + "\n")
        positive = bool(res)
    else:
        out.write(("invalid" if res else "valid") + "\n")
        positive = not res
    if res:
        label = "witness" if args.satisfiable else "counterexample"
        out.write(f"{label}: world {res.world} of {len(res.witness.worlds)}\n")
        if args.witness:
            dump_model(res.witness, args.witness)
            out.write(f"{label} written to {args.witness}\n")
    if args.oracle_bound:
        found = decide.bounded_search(query, args.oracle_bound, max(2, len(atoms_of(query))), agents)
        # the bounded search can miss large witnesses, so only a found witness against "unsat" disagrees
        agree = found is None or bool(res)
        note = "witness found" if found else f"no witness within {args.oracle_bound} worlds"
        out.write(f"oracle: {note}; {'consistent' if agree else 'DISAGREES'}\n")
    out.write(f"atoms: {res.atoms}, surviving: {res.surviving}, profiles: {res.profiles}\n")
    return EXIT_TRUE if positive else EXIT_FALSE


def cmd_scenario(args, out: TextIO) -> int:
    fx = get_fixture(args.name)
    rows = []
    for text, expected in STORE_BATTERY:
        got = checker.satisfies(fx.model, "w1", parse(text))
        rows.append((text, got, expected))
    width = max(len(t) for t, _, _ in rows)
    if args.report:
        out.write(f"{args.name}: {fx.notes}\n")
    out.write(f"{'formula at w1'.ljust(width)}  verdict  expected\n")
    for text, got, expected in rows:
        mark = "" if got == expected else "  MISMATCH"
        out.write(f"{text.ljust(width)}  {str(got).lower():7}  {str(expected).lower()}{mark}\n")
    return EXIT_TRUE if all(g == e for _, g, e in rows) else EXIT_FALSE


def cmd_export_dot(args, out: TextIO) -> int:
    m = _load(args.model)
    out.write(to_dot(m, args.indist))
    return EXIT_TRUE


def to_dot(m: Model, indist: str | None = None) -> str:
    """Worlds as nodes, R-blocks as undirected edges, and optionally one indist partition as clusters."""
    lines = ["graph model {", "  node [shape=ellipse];"]
    body = []
    clusters = []
    if indist:
        i, _, j = indist.partition(",")
        for n, block in enumerate(m.indist(i, j).blocks):
            ws = sorted(block, key=natural_key)
            clusters.append(f'  subgraph cluster_{n} {{ label="={i}{j}"; ' + " ".join(f'"{w}";' for w in ws) + " }")
    for w in m.worlds:
        label = w + "\\n" + ",".join(p for p in m.props if p in m.truth[w])
        body.append(f'  "{w}" [label="{label}"];')
    for a in m.agents:
        for block in m.access[a].blocks:
            ws = sorted(block, key=natural_key)
            for x in range(len(ws)):
                for y in range(x + 1, len(ws)):
                    body.append(f'  "{ws[x]}" -- "{ws[y]}" [label="{a}"];')
    return "\n".join(lines + clusters + body + ["}"]) + "\n"


# --- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alp", description="Awareness logic with partitions: checking, proofs, decision.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("model")
    p.set_defaults(run=cmd_validate)

    modes = ["targeted", "viewpoint", "viewpoint_wide"]
    p = sub.add_parser("check", help="evaluate a formula at a world")
    p.add_argument("--model", required=True, help="fixture name or model JSON path")
    p.add_argument("--world")
    p.add_argument("--formula")
    p.add_argument("--explain", action="store_true", help="print the composed-closure block for each C/K")
    p.add_argument("--update-mode", default="targeted", choices=modes)
    p.add_argument("--stdin", action="store_true", help="read '<world> <formula>' lines from stdin")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("extension", help="list the worlds where a formula holds")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--update-mode", default="targeted", choices=modes)
    p.set_defaults(run=cmd_extension)

    p = sub.add_parser("closure", help="print the closure of a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--agents", required=True, help="comma-separated agent names")
    p.set_defaults(run=cmd_closure)

    p = sub.add_parser("prove", help="check a proof script")
    p.add_argument("script")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("decide", help="decide validity (or satisfiability) of a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--agents", help="comma-separated agent names (default: those in the formula)")
    p.add_argument("--max-atoms", type=int, default=decide.DEFAULT_MAX_ATOMS)
    p.add_argument("--oracle-bound", type=int, default=0, help="cross-check with bounded model search up to W worlds")
    p.add_argument("--satisfiable", action="store_true", help="decide satisfiability instead of validity")
    p.add_argument("--witness", metavar="FILE", help="write the witness or counterexample model as JSON")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("scenario", help="evaluate the store formula battery at w1")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("--report", action="store_true", help="include fixture notes")
    p.set_defaults(run=cmd_scenario)

    p = sub.add_parser("export-dot", help="write a model as a Graphviz graph")
    p.add_argument("--model", required=True)
    p.add_argument("--indist", metavar="I,J", help="draw the indistinguishability partition of (I, J) as clusters")
    p.set_defaults(run=cmd_export_dot)
    return ap


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args, out)
    except decide.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        _Usage,
        ModelError,
        FormulaSyntaxError,
        ScriptSyntaxError,
        decide.DecideError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        code = getattr(exc, "code", None)
        prefix = f"{code}: " if isinstance(code, str) else ""
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
