"""Satisfaction and model-level validity.

Evaluation is bottom-up over extensions: each subformula is mapped to the
bitmask of worlds where it holds, memoized per formula node for the duration of
one query. Boxes keep exactly the blocks of their partition that lie inside the
operand's extension.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dynamics import UpdateMode, update_minus, update_plus
from .model import E_UNKNOWN_REF, Model, ModelError, Partition
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
    atoms_of,
    walk,
)


class ScopeError(ModelError):
    """A query mentions an agent, proposition or world the model does not declare."""


def check_scope(m: Model, f: Formula, world: str | None = None) -> None:
    if world is not None and world not in m.truth:
        raise ScopeError(E_UNKNOWN_REF, f"unknown world {world!r}")
    agents = set(m.agents)
    for g in walk(f):
        if isinstance(g, Prop):
            if g.name not in m.props:
                raise ScopeError(E_UNKNOWN_REF, f"undeclared proposition {g.name!r}")
        elif isinstance(g, ImplicitK):
            if g.j not in agents:
                raise ScopeError(E_UNKNOWN_REF, f"undeclared agent {g.j!r}")
        elif hasattr(g, "i"):
            for a in (g.i, g.j):
                if a not in agents:
                    raise ScopeError(E_UNKNOWN_REF, f"undeclared agent {a!r}")


def _box(blocks: tuple[int, ...], ext: int) -> int:
    out = 0
    for b in blocks:
        if b & ext == b:
            out |= b
    return out


@dataclass
class TraceEntry:
    formula: Formula
    partition: Partition
    extension: frozenset[str]
    model: Model


@dataclass
class Evaluator:
    """One query's worth of evaluation state over a fixed model."""

    model: Model
    mode: UpdateMode = UpdateMode.TARGETED
    trace: list[TraceEntry] | None = None
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._bits = self.model.bits()

    def mask(self, f: Formula) -> int:
        try:
            return self._memo[f]
        except KeyError:
            pass
        bits = self._bits
        if isinstance(f, Prop):
            r = bits.prop[f.name]
        elif isinstance(f, Not):
            r = bits.full & ~self.mask(f.arg)
        elif isinstance(f, And):
            r = self.mask(f.left) & self.mask(f.right)
        elif isinstance(f, Or):
            r = self.mask(f.left) | self.mask(f.right)
        elif isinstance(f, Imp):
            r = (bits.full & ~self.mask(f.left)) | self.mask(f.right)
        elif isinstance(f, Iff):
            r = bits.full & ~(self.mask(f.left) ^ self.mask(f.right))
        elif isinstance(f, Aware):
            r = bits.full if atoms_of(f.arg) <= self.model.awareness[(f.i, f.j)] else 0
        elif isinstance(f, ImplicitK):
            r = _box(bits.access[f.j], self.mask(f.arg))
        elif isinstance(f, EqBox):
            r = _box(bits.indist[(f.i, f.j)], self.mask(f.arg))
        elif isinstance(f, CBox):
            r = _box(bits.composed[(f.i, f.j)], self.mask(f.arg))
            self._record(f, r)
        elif isinstance(f, ExplicitK):
            aware = atoms_of(f.arg) <= self.model.awareness[(f.i, f.j)]
            r = _box(bits.composed[(f.i, f.j)], self.mask(f.arg)) if aware else 0
            self._record(f, r)
        elif isinstance(f, (PlusUpdate, MinusUpdate)):
            update = update_plus if isinstance(f, PlusUpdate) else update_minus
            inner = Evaluator(update(self.model, f.i, f.j, f.content, self.mode), self.mode, self.trace)
            r = inner.mask(f.body)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._memo[f] = r
        return r

    def _record(self, f, r: int) -> None:
        if self.trace is not None:
            self.trace.append(
                TraceEntry(f, self.model.composed_closure(f.i, f.j), self.worlds_of(r), self.model)
            )

    def worlds_of(self, mask: int) -> frozenset[str]:
        return frozenset(w for w, k in self._bits.index.items() if mask >> k & 1)

    def holds(self, w: str, f: Formula) -> bool:
        return bool(self.mask(f) >> self._bits.index[w] & 1)


def satisfies(m: Model, w: str, f: Formula, mode: UpdateMode = UpdateMode.TARGETED) -> bool:
    """M, w |= f."""
    check_scope(m, f, w)
    return Evaluator(m, mode).holds(w, f)


def extension(m: Model, f: Formula, mode: UpdateMode = UpdateMode.TARGETED) -> frozenset[str]:
    """The set of worlds of ``m`` where ``f`` holds."""
    check_scope(m, f)
    ev = Evaluator(m, mode)
    return ev.worlds_of(ev.mask(f))


def valid_in_model(m: Model, f: Formula, mode: UpdateMode = UpdateMode.TARGETED) -> bool:
    """M |= f: ``f`` holds at every world of ``m``."""
    check_scope(m, f)
    ev = Evaluator(m, mode)
    return ev.mask(f) == ev._bits.full


def explain(m: Model, w: str, f: Formula, mode: UpdateMode = UpdateMode.TARGETED) -> tuple[bool, list[TraceEntry]]:
    """Evaluate ``f`` at ``w`` and return the verdict with one entry per C/K operator."""
    check_scope(m, f, w)
    trace: list[TraceEntry] = []
    ev = Evaluator(m, mode, trace)
    return ev.holds(w, f), trace
