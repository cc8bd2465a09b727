"""Seeded random formulas, models and schema instances for property suites."""
from __future__ import annotations

import random
from typing import Sequence

from .model import Model
from .proofs import PVAR, SCHEMAS, instantiate, schema_metavariables
from .syntax import (
    And,
    Aware,
    CBox,
    EqBox,
    ExplicitK,
    Formula,
    Iff,
    Imp,
    ImplicitK,
    MinusUpdate,
    Not,
    Or,
    PlusUpdate,
    Prop,
    parse,
)

AGENTS = ("a", "b", "c")
PROPS = ("p", "q", "r")


def random_formula(
    rng: random.Random,
    depth: int,
    agents: Sequence[str] = AGENTS[:2],
    props: Sequence[str] = PROPS[:2],
    modal_depth: int | None = None,
    dynamic: bool = False,
    connectives: bool = True,
) -> Formula:
    """A random formula of syntactic depth at most ``depth``.

    ``modal_depth`` caps the nesting of modal operators separately (defaults
    to ``depth``). Update operators appear only when ``dynamic`` is set.
    """
    if modal_depth is None:
        modal_depth = depth
    if depth <= 0 or rng.random() < 0.2:
        return Prop(rng.choice(props))
    kinds = ["not", "and"]
    if connectives:
        kinds += ["or", "imp", "iff"]
    if modal_depth > 0:
        kinds += ["A", "L", "E", "C", "K", "L", "E", "C", "K"]
        if dynamic:
            kinds += ["+", "-"]
    kind = rng.choice(kinds)
    sub = lambda md=modal_depth: random_formula(rng, depth - 1, agents, props, md, dynamic, connectives)  # noqa: E731
    i, j = rng.choice(agents), rng.choice(agents)
    if kind == "not":
        return Not(sub())
    if kind in ("and", "or", "imp", "iff"):
        cls = {"and": And, "or": Or, "imp": Imp, "iff": Iff}[kind]
        return cls(sub(), sub())
    inner = modal_depth - 1
    if kind == "A":
        return Aware(i, j, sub(inner))
    if kind == "L":
        return ImplicitK(j, sub(inner))
    if kind == "E":
        return EqBox(i, j, sub(inner))
    if kind == "C":
        return CBox(i, j, sub(inner))
    if kind == "K":
        return ExplicitK(i, j, sub(inner))
    cls = PlusUpdate if kind == "+" else MinusUpdate
    return cls(i, j, Prop(rng.choice(props)), sub(inner))


def _random_blocks(rng: random.Random, worlds: list[str]) -> list[list[str]]:
    k = rng.randint(1, len(worlds))
    blocks: list[list[str]] = [[] for _ in range(k)]
    for w in worlds:
        blocks[rng.randrange(k)].append(w)
    return [b for b in blocks if b]


def random_model(
    rng: random.Random,
    max_worlds: int = 6,
    agents: Sequence[str] = AGENTS,
    props: Sequence[str] = PROPS,
    min_worlds: int = 1,
) -> Model:
    """A random well-formed model: equivalence relations and awareness with A^i_j within A^i_i."""
    n = rng.randint(min_worlds, max_worlds)
    worlds = [f"w{k + 1}" for k in range(n)]
    truth = {w: {p for p in props if rng.random() < 0.5} for w in worlds}
    access = {a: _random_blocks(rng, worlds) for a in agents}
    awareness = {}
    for i in agents:
        own = [p for p in props if rng.random() < 0.7] or [rng.choice(props)]
        for j in agents:
            if i == j:
                awareness[(i, j)] = set(own)
            else:
                awareness[(i, j)] = {p for p in own if rng.random() < 0.7} or {rng.choice(own)}
    return Model(list(agents), list(props), truth, access, awareness)


# Propositional tautology shapes used to instantiate TAUT; phi/psi/chi are replaced by random formulas.
TAUTOLOGY_SHAPES = (
    "phi -> phi",
    "phi | ~phi",
    "phi -> psi -> phi",
    "(phi -> psi) -> ~psi -> ~phi",
    "phi & psi -> psi",
    "~~phi <-> phi",
    "(phi -> psi -> chi) -> (phi -> psi) -> phi -> chi",
    "~(phi & psi) <-> ~phi | ~psi",
)


def random_instance(
    rng: random.Random,
    schema: str,
    agents: Sequence[str] = AGENTS,
    props: Sequence[str] = PROPS,
    depth: int = 2,
) -> Formula:
    """A random instance of a named axiom schema (or a random tautology for TAUT)."""
    def sub_formula() -> Formula:
        return random_formula(rng, depth, agents, props, modal_depth=1)

    if schema == "TAUT":
        shape = parse(rng.choice(TAUTOLOGY_SHAPES))
        letters = {name: sub_formula() for name in ("phi", "psi", "chi")}
        return _replace_props(shape, letters)
    fvars, avars = schema_metavariables(schema)
    sub: dict = {a: rng.choice(agents) for a in avars}
    for v in fvars:
        sub[v] = Prop(rng.choice(props)) if v == PVAR else sub_formula()
    return instantiate(SCHEMAS[schema], sub)


def _replace_props(f: Formula, letters: dict) -> Formula:
    if isinstance(f, Prop):
        return letters.get(f.name, f)
    if isinstance(f, Not):
        return Not(_replace_props(f.arg, letters))
    return type(f)(_replace_props(f.left, letters), _replace_props(f.right, letters))
