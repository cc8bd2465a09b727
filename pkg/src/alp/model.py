"""Epistemic models with awareness, their validation, and derived partitions.

A model holds worlds, an equivalence relation R_i per agent (stored as a
partition), a valuation, and awareness sets A^i_j indexed by
(viewpoint, subject). The indistinguishability relation for (i, j) relates two
worlds iff they agree on every proposition in A^i_j, so it is always derived
and never read from input.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class ModelError(ValueError):
    """Validation failure. ``code`` is one of the ``E_*`` constants below."""

    def __init__(self, code: str, message: str, witness=None):
        self.code = code
        self.witness = witness
        super().__init__(f"[{code}] {message}")


E_EMPTY_WORLDS = "empty-worlds"
E_NOT_EQUIVALENCE = "not-equivalence"
E_EMPTY_AWARENESS = "empty-awareness"
E_NOT_SUBSET = "awareness-not-subset"
E_UNKNOWN_REF = "unknown-reference"
E_MISSING_VALUE = "missing-assignment"
E_EXPLICIT_INDIST = "explicit-indistinguishability"
E_MALFORMED = "malformed"


def natural_key(name: str):
    """Sort key that orders w2 before w10."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", name) if t)


class Partition:
    """A partition of a finite world set into disjoint nonempty blocks."""

    __slots__ = ("blocks", "_index")

    def __init__(self, blocks: Iterable[Iterable[str]]):
        normalized = [frozenset(b) for b in blocks]
        normalized = [b for b in normalized if b]
        normalized.sort(key=lambda b: natural_key(min(b, key=natural_key)))
        index: dict[str, frozenset[str]] = {}
        for b in normalized:
            for w in b:
                if w in index:
                    raise ValueError(f"world {w!r} occurs in two blocks")
                index[w] = b
        self.blocks: tuple[frozenset[str], ...] = tuple(normalized)
        self._index = index

    @classmethod
    def identity(cls, worlds: Iterable[str]) -> "Partition":
        return cls([w] for w in worlds)

    @classmethod
    def single(cls, worlds: Iterable[str]) -> "Partition":
        return cls([list(worlds)])

    @classmethod
    def by_key(cls, worlds: Iterable[str], key) -> "Partition":
        groups: dict = {}
        for w in worlds:
            groups.setdefault(key(w), []).append(w)
        return cls(groups.values())

    @property
    def worlds(self) -> frozenset[str]:
        return frozenset(self._index)

    def block(self, w: str) -> frozenset[str]:
        return self._index[w]

    def same(self, w: str, v: str) -> bool:
        return self._index[w] is self._index[v]

    def pairs(self) -> set[tuple[str, str]]:
        return {(w, v) for b in self.blocks for w in b for v in b}

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` lies inside one block of ``other``."""
        return all(len({other.block(w) for w in b}) == 1 for b in self.blocks)

    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and set(self.blocks) == set(other.blocks)

    def __hash__(self) -> int:
        return hash(frozenset(self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(sorted(b, key=natural_key)) + "}" for b in self.blocks)
        return f"Partition([{inner}])"


def classes(p: Partition) -> list[set[str]]:
    """Blocks of ``p`` ordered by their least world name."""
    return [set(b) for b in p.blocks]


def equivalence_closure(worlds: Sequence[str], edges: Iterable[tuple[str, str]]) -> Partition:
    parent = {w: w for w in worlds}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return Partition.by_key(worlds, find)


def relation_to_partition(worlds: Sequence[str], pairs: set[tuple[str, str]], agent: str) -> Partition:
    """Check that ``pairs`` is an equivalence relation and return its classes."""
    for w in worlds:
        if (w, w) not in pairs:
            raise ModelError(E_NOT_EQUIVALENCE, f"R_{agent} is not reflexive: ({w},{w}) missing", (w, w))
    for w, v in sorted(pairs):
        if (v, w) not in pairs:
            raise ModelError(
                E_NOT_EQUIVALENCE, f"R_{agent} is not symmetric: ({w},{v}) without ({v},{w})", (w, v)
            )
    succ: dict[str, set[str]] = {w: set() for w in worlds}
    for w, v in pairs:
        succ[w].add(v)
    for w in worlds:
        for v in sorted(succ[w]):
            for u in sorted(succ[v]):
                if u not in succ[w]:
                    raise ModelError(
                        E_NOT_EQUIVALENCE,
                        f"R_{agent} is not transitive: ({w},{v}) and ({v},{u}) without ({w},{u})",
                        (w, u),
                    )
    return equivalence_closure(worlds, pairs)


@dataclass(frozen=True)
class _Bits:
    """World-indexed bitmask view of a model, used by the checker."""

    index: dict
    full: int
    prop: dict
    access: dict
    indist: dict
    composed: dict


class Model:
    """An epistemic model with awareness.

    Parameters
    ----------
    agents, props:
        Declared agent and proposition names, kept in the given order.
    truth:
        world name -> set of propositions true there. Every world listed here
        exists; the world order is the insertion order.
    access:
        agent -> R_agent, given as a :class:`Partition` or an iterable of blocks.
    awareness:
        (viewpoint, subject) -> set of propositions, one entry per pair.

    All invariants are checked on construction and every derived partition is
    computed eagerly.
    """

    def __init__(
        self,
        agents: Sequence[str],
        props: Sequence[str],
        truth: Mapping[str, Iterable[str]],
        access: Mapping[str, Partition | Iterable[Iterable[str]]],
        awareness: Mapping[tuple[str, str], Iterable[str]],
    ):
        self.agents: tuple[str, ...] = tuple(dict.fromkeys(agents))
        self.props: tuple[str, ...] = tuple(dict.fromkeys(props))
        self.worlds: tuple[str, ...] = tuple(truth)
        if not self.worlds:
            raise ModelError(E_EMPTY_WORLDS, "the world set is empty")
        if not self.agents:
            raise ModelError(E_MALFORMED, "the agent set is empty")
        prop_set = set(self.props)
        self.truth: dict[str, frozenset[str]] = {}
        for w, true_props in truth.items():
            tp = frozenset(true_props)
            unknown = tp - prop_set
            if unknown:
                raise ModelError(E_UNKNOWN_REF, f"world {w} assigns undeclared props {sorted(unknown)}")
            self.truth[w] = tp

        world_set = set(self.worlds)
        self.access: dict[str, Partition] = {}
        for a in self.agents:
            if a not in access:
                raise ModelError(E_UNKNOWN_REF, f"no accessibility relation for agent {a}")
            part = access[a] if isinstance(access[a], Partition) else Partition(access[a])
            if part.worlds != world_set:
                extra = sorted(part.worlds - world_set)
                if extra:
                    raise ModelError(E_UNKNOWN_REF, f"R_{a} mentions unknown worlds {extra}")
                part = Partition(list(part.blocks) + [[w] for w in world_set - part.worlds])
            self.access[a] = part
        extra_agents = set(access) - set(self.agents)
        if extra_agents:
            raise ModelError(E_UNKNOWN_REF, f"relations for undeclared agents {sorted(extra_agents)}")

        self.awareness: dict[tuple[str, str], frozenset[str]] = {}
        for i in self.agents:
            for j in self.agents:
                if (i, j) not in awareness:
                    raise ModelError(E_EMPTY_AWARENESS, f"awareness set A^{i}_{j} is missing")
                aw = frozenset(awareness[(i, j)])
                unknown = aw - prop_set
                if unknown:
                    raise ModelError(E_UNKNOWN_REF, f"A^{i}_{j} mentions undeclared props {sorted(unknown)}")
                if not aw:
                    raise ModelError(E_EMPTY_AWARENESS, f"awareness set A^{i}_{j} is empty", (i, j))
                self.awareness[(i, j)] = aw
        extra_pairs = set(awareness) - set(self.awareness)
        if extra_pairs:
            raise ModelError(E_UNKNOWN_REF, f"awareness for undeclared agent pairs {sorted(extra_pairs)}")
        for (i, j), aw in self.awareness.items():
            outside = aw - self.awareness[(i, i)]
            if outside:
                p = sorted(outside)[0]
                raise ModelError(
                    E_NOT_SUBSET, f"A^{i}_{j} is not a subset of A^{i}_{i}: {p} is missing from A^{i}_{i}", p
                )

        self._indist = {pair: self._compute_indist(*pair) for pair in self.awareness}
        self._composed = {pair: self._compute_composed(*pair) for pair in self.awareness}
        self._bits: _Bits | None = None

    # -- derived relations -------------------------------------------------

    def _compute_indist(self, i: str, j: str) -> Partition:
        aw = self.awareness[(i, j)]
        return Partition.by_key(self.worlds, lambda w: self.truth[w] & aw)

    def _compute_composed(self, i: str, j: str) -> Partition:
        # transitive closure of the step relation: one indist step, then one R_j step
        eq, r = self._indist[(i, j)], self.access[j]
        seen: dict[str, frozenset[str]] = {}
        for w in self.worlds:
            if w in seen:
                continue
            reach = {w}
            queue = deque([w])
            while queue:
                u = queue.popleft()
                for x in eq.block(u):
                    for v in r.block(x):
                        if v not in reach:
                            reach.add(v)
                            queue.append(v)
            block = frozenset(reach)
            for v in block:
                seen[v] = block
        return Partition(set(seen.values()))

    def indist(self, i: str, j: str) -> Partition:
        self._check_agents(i, j)
        return self._indist[(i, j)]

    def composed_closure(self, i: str, j: str) -> Partition:
        self._check_agents(i, j)
        return self._composed[(i, j)]

    def _check_agents(self, *agents: str) -> None:
        for a in agents:
            if a not in self.access:
                raise ModelError(E_UNKNOWN_REF, f"unknown agent {a!r}")

    # -- convenience ---------------------------------------------------------

    def valuation(self, prop: str) -> frozenset[str]:
        """V(prop): the worlds where ``prop`` holds."""
        return frozenset(w for w in self.worlds if prop in self.truth[w])

    def bits(self) -> _Bits:
        if self._bits is None:
            index = {w: k for k, w in enumerate(self.worlds)}

            def masks(p: Partition):
                out = []
                for b in p.blocks:
                    m = 0
                    for w in b:
                        m |= 1 << index[w]
                    out.append(m)
                return tuple(out)

            prop = {p: sum(1 << index[w] for w in self.worlds if p in self.truth[w]) for p in self.props}
            self._bits = _Bits(
                index=index,
                full=(1 << len(self.worlds)) - 1,
                prop=prop,
                access={a: masks(p) for a, p in self.access.items()},
                indist={k: masks(p) for k, p in self._indist.items()},
                composed={k: masks(p) for k, p in self._composed.items()},
            )
        return self._bits

    def with_awareness(self, awareness: Mapping[tuple[str, str], Iterable[str]]) -> "Model":
        return Model(self.agents, self.props, self.truth, self.access, awareness)

    def same_structure(self, other: "Model") -> bool:
        """Worlds, relations and valuation identical (awareness may differ)."""
        return (
            self.worlds == other.worlds
            and self.truth == other.truth
            and self.access == other.access
            and self.agents == other.agents
            and self.props == other.props
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Model) and self.same_structure(other) and self.awareness == other.awareness

    def __hash__(self) -> int:
        return hash((self.worlds, frozenset(self.awareness.items())))

    def __repr__(self) -> str:
        return f"Model(agents={list(self.agents)}, props={list(self.props)}, worlds={len(self.worlds)})"

    def to_dict(self) -> dict:
        """Serialize to the JSON model-file layout (relations as closed edge lists)."""
        relations = {}
        for a in self.agents:
            edges = []
            for b in self.access[a].blocks:
                ws = sorted(b, key=natural_key)
                edges += [[ws[0], v] for v in ws[1:]]
            relations[a] = {"edges": edges, "closure": "equivalence"}
        return {
            "agents": list(self.agents),
            "props": list(self.props),
            "worlds": {w: {p: p in self.truth[w] for p in self.props} for w in self.worlds},
            "relations": relations,
            "awareness": {
                i: {j: [p for p in self.props if p in self.awareness[(i, j)]] for j in self.agents}
                for i in self.agents
            },
        }


def indist(m: Model, i: str, j: str) -> Partition:
    """Partition of the worlds by agreement on every proposition in A^i_j."""
    return m.indist(i, j)


def composed_closure(m: Model, i: str, j: str) -> Partition:
    """Partition of the worlds by (R_j o indist^i_j)^+."""
    return m.composed_closure(i, j)


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------

_FORBIDDEN_KEYS = ("indistinguishability", "indist", "equiv", "equivalences")


def validate(spec: Mapping) -> Model:
    """Build a :class:`Model` from a parsed model-file document."""
    if not isinstance(spec, Mapping):
        raise ModelError(E_MALFORMED, "model document must be a JSON object")
    for key in _FORBIDDEN_KEYS:
        if key in spec:
            raise ModelError(
                E_EXPLICIT_INDIST,
                f"'{key}' is not accepted: indistinguishability is derived from valuation and awareness",
            )
    try:
        agents = list(spec["agents"])
        props = list(spec["props"])
        worlds_doc = spec["worlds"]
        relations_doc = spec["relations"]
        awareness_doc = spec["awareness"]
    except KeyError as exc:
        raise ModelError(E_MALFORMED, f"missing top-level key {exc.args[0]!r}") from None
    for name in agents + props:
        if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ModelError(E_MALFORMED, f"invalid identifier {name!r}")
    if len(set(props)) != len(props) or len(set(agents)) != len(agents):
        raise ModelError(E_MALFORMED, "duplicate agent or proposition names")
    if not worlds_doc:
        raise ModelError(E_EMPTY_WORLDS, "the world set is empty")

    truth: dict[str, set[str]] = {}
    for w, assignment in worlds_doc.items():
        if not isinstance(assignment, Mapping):
            raise ModelError(E_MALFORMED, f"world {w} must map propositions to booleans")
        unknown = set(assignment) - set(props)
        if unknown:
            raise ModelError(E_UNKNOWN_REF, f"world {w} assigns undeclared props {sorted(unknown)}")
        missing = [p for p in props if p not in assignment]
        if missing:
            raise ModelError(E_MISSING_VALUE, f"world {w} has no value for {missing}", (w, missing[0]))
        for p, val in assignment.items():
            if not isinstance(val, bool):
                raise ModelError(E_MALFORMED, f"world {w}: value of {p} must be true/false")
        truth[w] = {p for p in props if assignment[p]}
    worlds = list(truth)

    access: dict[str, Partition] = {}
    unknown_agents = set(relations_doc) - set(agents)
    if unknown_agents:
        raise ModelError(E_UNKNOWN_REF, f"relations for undeclared agents {sorted(unknown_agents)}")
    for a in agents:
        if a not in relations_doc:
            raise ModelError(E_UNKNOWN_REF, f"no relation given for agent {a}")
        rel = relations_doc[a]
        if isinstance(rel, Mapping):
            edges = rel.get("edges", [])
            mode = rel.get("closure", "none")
        else:
            edges, mode = rel, "none"
        pairs = set()
        for e in edges:
            if len(e) != 2:
                raise ModelError(E_MALFORMED, f"R_{a}: edge {e!r} is not a pair")
            w, v = e
            for x in (w, v):
                if x not in truth:
                    raise ModelError(E_UNKNOWN_REF, f"R_{a} mentions unknown world {x!r}", x)
            pairs.add((w, v))
        if mode == "equivalence":
            access[a] = equivalence_closure(worlds, pairs)
        elif mode == "none":
            access[a] = relation_to_partition(worlds, pairs, a)
        else:
            raise ModelError(E_MALFORMED, f"R_{a}: closure must be 'equivalence' or 'none', got {mode!r}")

    awareness: dict[tuple[str, str], list[str]] = {}
    unknown_vp = set(awareness_doc) - set(agents)
    if unknown_vp:
        raise ModelError(E_UNKNOWN_REF, f"awareness for undeclared agents {sorted(unknown_vp)}")
    for i in agents:
        row = awareness_doc.get(i, {})
        unknown_sub = set(row) - set(agents)
        if unknown_sub:
            raise ModelError(E_UNKNOWN_REF, f"awareness of {i} for undeclared agents {sorted(unknown_sub)}")
        for j in agents:
            if j not in row:
                raise ModelError(E_EMPTY_AWARENESS, f"awareness set A^{i}_{j} is missing", (i, j))
            awareness[(i, j)] = list(row[j])
    return Model(agents, props, truth, access, awareness)


def load_model(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError(E_MALFORMED, f"invalid JSON: {exc}") from None
    return validate(doc)


def dump_model(m: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(m.to_dict(), fh, indent=2)
        fh.write("\n")
