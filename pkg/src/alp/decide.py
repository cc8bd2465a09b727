"""Desk-scale satisfiability and validity for formulas without update operators.

The procedure works on atoms: truth assignments to a finite set of formulas
(the closure of the input) that respect the local saturation rules. Atoms are
grouped by awareness profile (which atomic propositions each index pair is
aware of), since awareness is the same at every world of a model. Within one
profile:

* atoms are related by L_j when they agree on every L_j-box and C^i_j-box in
  the closure, and by [=]^i_j when they agree on every [=]^i_j-box, every
  C^i_j-box and every proposition aware for (i, j); the (i, i) relation also
  respects all (i, k) keys, mirroring that A^i_k is a subset of A^i_i;
* atoms with an unfulfilled diamond (a false box whose operand is true
  throughout the relevant class or C-component) are pruned until nothing
  changes;
* a surviving atom containing the input yields a concrete witness model,
  which is re-checked by :mod:`alp.checker` before it is returned.

:func:`bounded_search` is an independent oracle: exhaustive enumeration of
small models.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .checker import satisfies
from .model import Model
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
    Not,
    Or,
    Prop,
    agents_of,
    atoms_of,
    closure,
    has_dynamic,
    size,
    to_core,
    walk,
)

DEFAULT_MAX_ATOMS = 2**16


class BudgetExceeded(RuntimeError):
    def __init__(self, closure_size: int, limit: int, generated: int):
        self.closure_size = closure_size
        self.limit = limit
        self.generated = generated
        super().__init__(
            f"atom budget exceeded: more than {limit} atoms over a closure of {closure_size} formulas"
        )


class DecideError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    """A saturated assignment over the positive closure formulas.

    ``members`` holds, for every closure formula psi that is not a negation,
    either psi or ~psi. ``profile`` lists the aware (viewpoint, subject, prop)
    triples shared by all atoms of one candidate model.
    """

    members: frozenset[Formula]
    profile: frozenset[tuple[str, str, str]]

    def __contains__(self, f: Formula) -> bool:
        if isinstance(f, Not) and isinstance(f.arg, Not):
            return f.arg.arg in self
        return f in self.members


# ---------------------------------------------------------------------------
# Closure used for atoms
# ---------------------------------------------------------------------------


def decision_closure(f: Formula) -> frozenset[Formula]:
    """Subformulas of ``f`` plus A/C for each K-formula and the MIX box for each C-formula.

    Formulas are positive (not negations); negations are represented by
    absence from an atom.
    """
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Not):
            stack.append(g.arg)
            continue
        if g in out:
            continue
        out.add(g)
        stack.extend(g.children())
        if isinstance(g, ExplicitK):
            stack += [Aware(g.i, g.j, g.arg), CBox(g.i, g.j, g.arg)]
        elif isinstance(g, CBox):
            stack.append(EqBox(g.i, g.j, ImplicitK(g.j, g)))
    return frozenset(out)


def _positive_closure(f: Formula, agents: Sequence[str], mode: str) -> list[Formula]:
    if mode == "decision":
        pos = decision_closure(f)
    elif mode == "full":
        pos = set()
        for g in closure(f, agents):
            while isinstance(g, Not):
                g = g.arg
            pos.add(g)
        pos |= decision_closure(f)
    else:
        raise DecideError(f"unknown closure mode {mode!r}")
    return sorted(pos, key=lambda g: (size(g), str(g)))


# ---------------------------------------------------------------------------
# Stability: formulas whose truth is constant on a relation's classes
# ---------------------------------------------------------------------------


def _stable_L(j: str, f: Formula) -> bool:
    if isinstance(f, Aware):
        return True
    if isinstance(f, (Not, And)):
        return all(_stable_L(j, c) for c in f.children())
    if isinstance(f, ImplicitK):
        return f.j == j
    if isinstance(f, (CBox, ExplicitK)):
        return f.j == j
    return False


def _stable_E(i: str, j: str, f: Formula, aware: dict) -> bool:
    if isinstance(f, Aware):
        return True
    if isinstance(f, (Not, And)):
        return all(_stable_E(i, j, c, aware) for c in f.children())
    if isinstance(f, Prop):
        return f.name in aware.get((i, j), ())
    if isinstance(f, (EqBox, CBox, ExplicitK)):
        return f.i == i and (f.j == j or i == j)
    return False


# ---------------------------------------------------------------------------
# Atom generation
# ---------------------------------------------------------------------------

_FREE, _AND, _CONST, _COPY, _NCOPY, _K = range(6)


@dataclass
class _Group:
    """All atoms of one awareness profile, as boolean vectors over ``pos``."""

    aware: dict  # (i, j) -> frozenset of aware props (only mentioned pairs)
    vectors: list[tuple[bool, ...]] = field(default_factory=list)
    free: list[int] = field(default_factory=list)


def _mentioned_pairs(pos: Iterable[Formula]) -> list[tuple[str, str]]:
    pairs = {(g.i, g.j) for g in pos if isinstance(g, (Aware, EqBox, CBox, ExplicitK))}
    return sorted(pairs)


def _profiles(pairs: list[tuple[str, str]], props: list[str]) -> Iterator[dict]:
    subsets = [frozenset(c) for r in range(len(props) + 1) for c in itertools.combinations(props, r)]
    for choice in itertools.product(subsets, repeat=len(pairs)):
        aware = dict(zip(pairs, choice))
        if all(s <= aware[(i, i)] for (i, j), s in aware.items() if (i, i) in aware):
            yield aware


def _compile(pos: list[Formula], index: dict, aware: dict) -> list[tuple]:
    """Per-formula evaluation recipe for one awareness profile."""

    def ref(g: Formula) -> tuple[int, bool]:
        neg = False
        while isinstance(g, Not):
            neg = not neg
            g = g.arg
        return index[g], neg

    prog = []
    for k, g in enumerate(pos):
        if isinstance(g, Prop):
            prog.append((k, _FREE, None, None))
        elif isinstance(g, And):
            prog.append((k, _AND, ref(g.left), ref(g.right)))
        elif isinstance(g, Aware):
            prog.append((k, _CONST, atoms_of(g.arg) <= aware[(g.i, g.j)], None))
        elif isinstance(g, ExplicitK):
            prog.append((k, _K, index[Aware(g.i, g.j, g.arg)], index[CBox(g.i, g.j, g.arg)]))
        else:
            if isinstance(g, ImplicitK):
                stable = _stable_L(g.j, g.arg)
            elif isinstance(g, EqBox):
                stable = _stable_E(g.i, g.j, g.arg, aware)
            elif isinstance(g, CBox):
                stable = _stable_L(g.j, g.arg) and _stable_E(g.i, g.j, g.arg, aware)
            else:
                raise DecideError(f"unsupported formula in closure: {g}")
            if stable:
                prog.append((k, _COPY, ref(g.arg), None))
            else:
                prog.append((k, _FREE, ref(g.arg) if not isinstance(g, Prop) else None, "box"))
    return prog


def _enumerate(prog: list[tuple], n: int, budget: list[int]) -> tuple[list[tuple[bool, ...]], list[int]]:
    """Depth-first enumeration of saturated vectors, pruning T-violations early."""
    free = [k for k, op, _, _ in prog if op == _FREE]
    out: list[tuple[bool, ...]] = []
    vals = [False] * n

    def val(r):
        k, neg = r
        return vals[k] != neg

    def go(pos_in_prog: int):
        k_step = pos_in_prog
        while k_step < len(prog):
            k, op, a, b = prog[k_step]
            if op == _FREE:
                choices = (False, True)
                if b == "box" and not val(a):
                    choices = (False,)  # T/MIX: a true box needs a true operand
                for c in choices:
                    vals[k] = c
                    go(k_step + 1)
                return
            if op == _AND:
                vals[k] = val(a) and val(b)
            elif op == _CONST:
                vals[k] = a
            elif op == _COPY:
                vals[k] = val(a)
            elif op == _K:
                vals[k] = vals[a] and vals[b]
            k_step += 1
        out.append(tuple(vals))
        budget[0] -= 1
        if budget[0] < 0:
            raise _OverBudget

    go(0)
    return out, free


class _OverBudget(Exception):
    pass


@dataclass
class _Space:
    formula: Formula  # core form
    agents: list[str]
    pos: list[Formula]
    index: dict
    pairs: list[tuple[str, str]]
    groups: list[_Group]


def _build_space(f: Formula, agents: Iterable[str] | None, max_atoms: int, mode: str) -> _Space:
    if has_dynamic(f):
        raise DecideError("the decision procedure does not handle update operators")
    ags = sorted(set(agents) if agents is not None else (agents_of(f) or {"a"}))
    if not ags:
        raise DecideError("need at least one agent")
    missing = agents_of(f) - set(ags)
    if missing:
        raise DecideError(f"formula mentions agents outside the agent set: {sorted(missing)}")
    core = to_core(f)
    pos = _positive_closure(core, ags, mode)
    index = {g: k for k, g in enumerate(pos)}
    pairs = _mentioned_pairs(pos)
    props = sorted(atoms_of(core))
    budget = [max_atoms]
    groups = []
    try:
        for aware in _profiles(pairs, props):
            prog = _compile(pos, index, aware)
            vectors, free = _enumerate(prog, len(pos), budget)
            groups.append(_Group(aware, vectors, free))
    except _OverBudget:
        raise BudgetExceeded(len(pos), max_atoms, max_atoms + 1) from None
    return _Space(core, ags, pos, index, pairs, groups)


def build_atoms(
    f: Formula,
    agents: Iterable[str] | None = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    closure_mode: str = "decision",
) -> list[Atom]:
    """All saturated atoms over the closure of ``f``, grouped by awareness profile."""
    space = _build_space(f, agents, max_atoms, closure_mode)
    return [_to_atom(space, g, v) for g in space.groups for v in g.vectors]


def _to_atom(space: _Space, group: _Group, vec: tuple[bool, ...]) -> Atom:
    members = frozenset(g if vec[k] else Not(g) for k, g in enumerate(space.pos))
    profile = frozenset((i, j, p) for (i, j), s in group.aware.items() for p in s)
    return Atom(members, profile)


# ---------------------------------------------------------------------------
# Relations and pruning
# ---------------------------------------------------------------------------


def _value(space: _Space, vec: tuple[bool, ...], g: Formula) -> bool:
    neg = False
    while isinstance(g, Not):
        neg = not neg
        g = g.arg
    return vec[space.index[g]] != neg


def _key_indices(space: _Space, aware: dict) -> tuple[dict, dict]:
    """Indices each relation's classes must agree on."""
    lkeys: dict[str, list[int]] = {j: [] for j in space.agents}
    ekeys: dict[tuple[str, str], list[int]] = {pair: [] for pair in space.pairs}
    for k, g in enumerate(space.pos):
        if isinstance(g, ImplicitK):
            lkeys[g.j].append(k)
        elif isinstance(g, CBox):
            lkeys[g.j].append(k)
        if isinstance(g, (EqBox, CBox)):
            for (i, j) in space.pairs:
                if g.i == i and (g.j == j or i == j):
                    ekeys[(i, j)].append(k)
        elif isinstance(g, Prop):
            for pair in space.pairs:
                if g.name in aware[pair]:
                    ekeys[pair].append(k)
    return lkeys, ekeys


def _classes(alive: Iterable[int], vectors, key: list[int]) -> dict:
    out: dict = {}
    for a in alive:
        v = vectors[a]
        out.setdefault(tuple(v[k] for k in key), []).append(a)
    return out


def _components(alive: list[int], partitions: list[dict]) -> dict[int, list[int]]:
    parent = {a: a for a in alive}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in partitions:
        for members in part.values():
            r0 = find(members[0])
            for m in members[1:]:
                r = find(m)
                if r != r0:
                    parent[r] = r0
    comps: dict[int, list[int]] = {}
    for a in alive:
        comps.setdefault(find(a), []).append(a)
    return comps


@dataclass
class _Pruned:
    group: _Group
    alive: set[int]
    lkeys: dict
    ekeys: dict
    iterations: int


def _prune(space: _Space, group: _Group) -> _Pruned:
    vectors = group.vectors
    lkeys, ekeys = _key_indices(space, group.aware)
    boxes = []  # (index, kind, relation key, operand)
    for k in group.free:
        g = space.pos[k]
        if isinstance(g, ImplicitK):
            boxes.append((k, "L", g.j, g.arg))
        elif isinstance(g, EqBox):
            boxes.append((k, "E", (g.i, g.j), g.arg))
        elif isinstance(g, CBox):
            boxes.append((k, "C", (g.i, g.j), g.arg))
    refuted = {k: [not _value(space, v, arg) for v in vectors] for k, _, _, arg in boxes}

    alive = set(range(len(vectors)))
    iterations = 0
    while True:
        iterations += 1
        dead: set[int] = set()
        lparts = {j: _classes(alive, vectors, lkeys[j]) for j in space.agents}
        eparts = {pair: _classes(alive, vectors, ekeys[pair]) for pair in space.pairs}
        comps_cache: dict = {}
        for k, kind, rel, _ in boxes:
            if kind == "L":
                blocks = lparts[rel].values()
            elif kind == "E":
                blocks = eparts[rel].values()
            else:
                if rel not in comps_cache:
                    alive_list = sorted(alive)
                    comps_cache[rel] = _components(alive_list, [lparts[rel[1]], eparts[rel]]).values()
                blocks = comps_cache[rel]
            for members in blocks:
                needy = [a for a in members if not vectors[a][k]]
                if needy and not any(refuted[k][a] for a in members):
                    dead.update(needy)
        if not dead:
            return _Pruned(group, alive, lkeys, ekeys, iterations)
        alive -= dead


# ---------------------------------------------------------------------------
# Witness extraction
# ---------------------------------------------------------------------------


def _fresh_names(taken: set[str]) -> Iterator[str]:
    for n in itertools.count():
        name = f"_q{n}"
        if name not in taken:
            yield name


def _extract(space: _Space, pruned: _Pruned, root: int, original: Formula) -> tuple[Model, str]:
    group, vectors = pruned.group, pruned.group.vectors
    alive = sorted(pruned.alive)
    lparts = {j: _classes(alive, vectors, pruned.lkeys[j]) for j in space.agents}
    eparts = {pair: _classes(alive, vectors, pruned.ekeys[pair]) for pair in space.pairs}
    comps = _components(alive, list(lparts.values()) + list(eparts.values()))
    component = next(c for c in comps.values() if root in c)
    component.sort(key=lambda a: (a != root, a))
    name = {a: f"w{n + 1}" for n, a in enumerate(component)}
    inside = set(component)

    def restrict(part: dict) -> list[list[str]]:
        blocks = [[name[a] for a in members if a in inside] for members in part.values()]
        return [b for b in blocks if b]

    base_props = sorted(atoms_of(space.formula))
    fresh = _fresh_names(set(base_props))
    top = next(fresh)
    truth: dict[str, set[str]] = {
        name[a]: {p for p in base_props if _value(space, vectors[a], Prop(p))} | {top} for a in component
    }
    props = base_props + [top]

    def split_props(blocks: list[list[str]]) -> set[str]:
        """Fresh props that are true exactly on one block each."""
        if len(blocks) <= 1:
            return set()
        made = set()
        for b in blocks:
            q = next(fresh)
            props.append(q)
            made.add(q)
            for w in b:
                truth[w].add(q)
        return made

    worlds = [name[a] for a in component]
    awareness: dict[tuple[str, str], set[str]] = {}
    for i in space.agents:
        for j in space.agents:
            if (i, j) in group.aware:
                awareness[(i, j)] = set(group.aware[(i, j)]) | {top} | split_props(restrict(eparts[(i, j)]))
    for i in space.agents:
        if (i, i) not in awareness:
            extra = set().union(*(awareness.get((i, j), set()) for j in space.agents))
            awareness[(i, i)] = extra | {top} | split_props([[w] for w in worlds])
        else:
            for j in space.agents:
                awareness[(i, i)] |= awareness.get((i, j), set())
        for j in space.agents:
            awareness.setdefault((i, j), {top})
    access = {j: restrict(lparts[j]) for j in space.agents}
    model = Model(space.agents, props, truth, access, awareness)
    return model, name[root]


@dataclass(frozen=True)
class SatResult:
    """Outcome of :func:`satisfiable`; truthy iff satisfiable."""

    satisfiable: bool
    witness: Model | None = None
    world: str | None = None
    atoms: int = 0
    surviving: int = 0
    profiles: int = 0
    #: largest number of pruning rounds over the profiles examined
    iterations: int = 0

    def __bool__(self) -> bool:
        return self.satisfiable


class WitnessError(AssertionError):
    """An extracted witness failed semantic re-verification."""


def satisfiable(
    f: Formula,
    agents: Iterable[str] | None = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    closure_mode: str = "decision",
) -> SatResult:
    """Decide satisfiability of ``f``; a positive answer carries a checked witness."""
    space = _build_space(f, agents, max_atoms, closure_mode)
    total = sum(len(g.vectors) for g in space.groups)
    surviving = 0
    iterations = 0
    for group in space.groups:
        if not group.vectors:
            continue
        pruned = _prune(space, group)
        surviving += len(pruned.alive)
        iterations = max(iterations, pruned.iterations)
        for a in sorted(pruned.alive):
            if _value(space, group.vectors[a], space.formula):
                model, world = _extract(space, pruned, a, f)
                if not satisfies(model, world, f):
                    raise WitnessError(f"extracted witness does not satisfy {f}")
                return SatResult(True, model, world, total, len(pruned.alive), len(space.groups), iterations)
    return SatResult(False, None, None, total, surviving, len(space.groups), iterations)


def valid(
    f: Formula,
    agents: Iterable[str] | None = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
    closure_mode: str = "decision",
) -> bool:
    """``f`` is valid iff ``~f`` is unsatisfiable."""
    return not satisfiable(Not(f), agents, max_atoms, closure_mode)


def counterexample(
    f: Formula,
    agents: Iterable[str] | None = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> tuple[Model, str] | None:
    res = satisfiable(Not(f), agents, max_atoms)
    return (res.witness, res.world) if res else None


# ---------------------------------------------------------------------------
# Bounded model search (independent oracle)
# ---------------------------------------------------------------------------


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n``: each labels one set partition of range(n)."""
    if n == 0:
        yield ()
        return

    def go(prefix: list[int], top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from go(prefix, max(top, b))
            prefix.pop()

    yield from go([0], 0)


def _rgs_masks(rgs: tuple[int, ...]) -> tuple[int, ...]:
    masks: dict[int, int] = {}
    for w, b in enumerate(rgs):
        masks[b] = masks.get(b, 0) | (1 << w)
    return tuple(masks.values())


def _join(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    blocks = list(a)
    for m in b:
        merged = m
        rest = []
        for x in blocks:
            if x & merged:
                merged |= x
            else:
                rest.append(x)
        blocks = rest + [merged]
    # a second pass is never needed: every block of b was merged with all blocks it touches
    return tuple(blocks)


def _box_mask(blocks: tuple[int, ...], ext: int) -> int:
    out = 0
    for blk in blocks:
        if blk & ext == blk:
            out |= blk
    return out


def _program(f: Formula) -> tuple[list[tuple], int]:
    index: dict[Formula, int] = {}
    prog: list[tuple] = []

    def go(g: Formula) -> int:
        if g in index:
            return index[g]
        kids = [go(c) for c in g.children()]
        k = len(prog)
        prog.append((type(g), g, kids))
        index[g] = k
        return k

    root = go(f)
    return prog, root


def _eval_program(prog, root, full, propmask, aware, access, indist, composed) -> int:
    vals = [0] * len(prog)
    for k, (t, g, kids) in enumerate(prog):
        if t is Prop:
            r = propmask[g.name]
        elif t is Not:
            r = full & ~vals[kids[0]]
        elif t is And:
            r = vals[kids[0]] & vals[kids[1]]
        elif t is Or:
            r = vals[kids[0]] | vals[kids[1]]
        elif t is Imp:
            r = (full & ~vals[kids[0]]) | vals[kids[1]]
        elif t is Iff:
            r = full & ~(vals[kids[0]] ^ vals[kids[1]])
        elif t is Aware:
            r = full if atoms_of(g.arg) <= aware[(g.i, g.j)] else 0
        elif t is ImplicitK:
            r = _box_mask(access[g.j], vals[kids[0]])
        elif t is EqBox:
            r = _box_mask(indist[(g.i, g.j)], vals[kids[0]])
        elif t is CBox:
            r = _box_mask(composed[(g.i, g.j)], vals[kids[0]])
        elif t is ExplicitK:
            r = _box_mask(composed[(g.i, g.j)], vals[kids[0]]) if atoms_of(g.arg) <= aware[(g.i, g.j)] else 0
        else:
            raise DecideError(f"bounded search does not evaluate {t.__name__}")
        vals[k] = r
    return vals[root]


def _nonempty_subsets(items: Sequence[str]) -> list[frozenset[str]]:
    return [frozenset(c) for r in range(1, len(items) + 1) for c in itertools.combinations(items, r)]


def bounded_search(
    f: Formula,
    max_worlds: int = 4,
    max_props: int = 2,
    agents: Iterable[str] | None = None,
) -> tuple[Model, str] | None:
    """Exhaustively search models with at most ``max_worlds`` worlds for one satisfying ``f``.

    The proposition set is At(f) padded with fresh letters up to ``max_props``.
    Components that ``f`` cannot observe (relations of agents it never uses as
    a knower, awareness of pairs it never mentions) are fixed to one canonical
    choice. Returns the first pointed model found, or None.
    """
    if has_dynamic(f):
        raise DecideError("bounded search does not handle update operators")
    props = sorted(atoms_of(f))
    if len(props) > max_props:
        raise DecideError(f"formula uses {len(props)} props but max_props is {max_props}")
    fresh = _fresh_names(set(props))
    while len(props) < max_props:
        props.append(next(fresh))
    ags = sorted(set(agents) if agents is not None else (agents_of(f) or {"a"}))
    missing = agents_of(f) - set(ags)
    if missing:
        raise DecideError(f"formula mentions agents outside the agent set: {sorted(missing)}")

    nodes = list(walk(f))
    knowers = sorted({g.j for g in nodes if isinstance(g, (ImplicitK, CBox, ExplicitK))})
    aw_pairs = {(g.i, g.j) for g in nodes if isinstance(g, (Aware, EqBox, CBox, ExplicitK))}
    eq_pairs = sorted({(g.i, g.j) for g in nodes if isinstance(g, (EqBox, CBox, ExplicitK))})
    c_pairs = sorted({(g.i, g.j) for g in nodes if isinstance(g, (CBox, ExplicitK))})
    prog, root = _program(f)

    all_props = frozenset(props)
    per_viewpoint = []
    for i in ags:
        options = []
        own_choices = _nonempty_subsets(props) if (i, i) in aw_pairs else [all_props]
        for own in own_choices:
            subs = [j for j in ags if j != i and (i, j) in aw_pairs]
            for picks in itertools.product(_nonempty_subsets(sorted(own)), repeat=len(subs)):
                row = {(i, j): own for j in ags}
                row.update(zip(((i, j) for j in subs), picks))
                options.append(row)
        per_viewpoint.append(options)
    aw_options = []
    for combo in itertools.product(*per_viewpoint):
        merged = {}
        for row in combo:
            merged.update(row)
        aw_options.append(merged)

    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        identity = tuple(1 << w for w in range(n))
        partitions = [_rgs_masks(r) for r in set_partitions(n)]
        r_options = list(itertools.product(partitions, repeat=len(knowers)))
        for vals in itertools.combinations_with_replacement(range(1 << len(props)), n):
            propmask = {
                p: sum(1 << w for w in range(n) if vals[w] >> b & 1) for b, p in enumerate(props)
            }
            for aware in aw_options:
                indist = {}
                for pair in eq_pairs:
                    groups: dict = {}
                    for w in range(n):
                        key = tuple(vals[w] >> b & 1 for b, p in enumerate(props) if p in aware[pair])
                        groups[key] = groups.get(key, 0) | (1 << w)
                    indist[pair] = tuple(groups.values())
                for rs in r_options:
                    access = dict(zip(knowers, rs))
                    composed = {pair: _join(indist[pair], access[pair[1]]) for pair in c_pairs}
                    ext = _eval_program(prog, root, full, propmask, aware, access, indist, composed)
                    if ext:
                        w0 = (ext & -ext).bit_length() - 1
                        model = _search_model(n, vals, props, ags, aware, access, identity)
                        world = f"w{w0 + 1}"
                        if not satisfies(model, world, f):
                            raise WitnessError(f"bounded-search witness does not satisfy {f}")
                        return model, world
    return None


def _search_model(n, vals, props, ags, aware, access, identity) -> Model:
    worlds = [f"w{w + 1}" for w in range(n)]
    truth = {worlds[w]: {p for b, p in enumerate(props) if vals[w] >> b & 1} for w in range(n)}
    rel = {}
    for a in ags:
        masks = access.get(a, identity)
        rel[a] = [[worlds[w] for w in range(n) if m >> w & 1] for m in masks]
    return Model(ags, props, truth, rel, aware)


__all__ = [
    "Atom", "BudgetExceeded", "DecideError", "SatResult", "WitnessError", "bounded_search",
    "build_atoms", "counterexample", "decision_closure", "satisfiable", "set_partitions", "valid",
    "DEFAULT_MAX_ATOMS",
]
