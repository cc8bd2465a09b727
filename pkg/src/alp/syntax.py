"""Formula AST, concrete syntax, and the structural functions At, sub and cl.

Concrete grammar (whitespace-insensitive)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary
             | "A[" ag "," ag "]" unary      awareness        A^i_j
             | "L[" ag "]" unary             implicit knowledge L_j
             | "E[" ag "," ag "]" unary      indistinguishability box [=]^i_j
             | "C[" ag "," ag "]" unary      composed-closure box C^i_j
             | "K[" ag "," ag "]" unary      explicit knowledge K^i_j
             | "[+" formula "][" ag "," ag "]" unary
             | "[-" formula "][" ag "," ag "]" unary
             | "(" formula ")" | prop
    prop, ag := [A-Za-z_][A-Za-z0-9_]*
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class Formula:
    """Base class of every formula node.

    Nodes are immutable and compare structurally. The hash is cached because
    formulas are used heavily as dictionary keys by the checker and the
    decision procedure.
    """

    __slots__ = ()

    def __hash__(self) -> int:
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((type(self).__name__,) + self._fields())
            object.__setattr__(self, "_hash", h)
            return h

    def _fields(self) -> tuple:
        raise NotImplementedError

    def children(self) -> tuple["Formula", ...]:
        return tuple(x for x in self._fields() if isinstance(x, Formula))

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True)
class Prop(Formula):
    name: str

    def _fields(self):
        return (self.name,)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Not(Formula):
    arg: Formula

    def _fields(self):
        return (self.arg,)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class And(Formula):
    left: Formula
    right: Formula

    def _fields(self):
        return (self.left, self.right)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Or(Formula):
    left: Formula
    right: Formula

    def _fields(self):
        return (self.left, self.right)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Imp(Formula):
    left: Formula
    right: Formula

    def _fields(self):
        return (self.left, self.right)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def _fields(self):
        return (self.left, self.right)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Aware(Formula):
    """A^i_j arg: every atom of ``arg`` is in j's awareness set from i's viewpoint."""

    i: str
    j: str
    arg: Formula

    def _fields(self):
        return (self.i, self.j, self.arg)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class ImplicitK(Formula):
    """L_j arg."""

    j: str
    arg: Formula

    def _fields(self):
        return (self.j, self.arg)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class EqBox(Formula):
    """[=]^i_j arg, written ``E[i,j]``."""

    i: str
    j: str
    arg: Formula

    def _fields(self):
        return (self.i, self.j, self.arg)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class CBox(Formula):
    """C^i_j arg: box over the transitive closure of (indistinguishability ; R_j)."""

    i: str
    j: str
    arg: Formula

    def _fields(self):
        return (self.i, self.j, self.arg)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class ExplicitK(Formula):
    """K^i_j arg, equivalent to A^i_j arg & C^i_j arg."""

    i: str
    j: str
    arg: Formula

    def _fields(self):
        return (self.i, self.j, self.arg)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class PlusUpdate(Formula):
    """[+content]^i_j body."""

    i: str
    j: str
    content: Formula
    body: Formula

    def _fields(self):
        return (self.i, self.j, self.content, self.body)

    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class MinusUpdate(Formula):
    """[-content]^i_j body."""

    i: str
    j: str
    content: Formula
    body: Formula

    def _fields(self):
        return (self.i, self.j, self.content, self.body)

    __hash__ = Formula.__hash__


BINARY = (And, Or, Imp, Iff)
PAIR_MODALS = (Aware, EqBox, CBox, ExplicitK)
UPDATES = (PlusUpdate, MinusUpdate)


def implies(a: Formula, b: Formula) -> Formula:
    return Imp(a, b)


def iff(a: Formula, b: Formula) -> Formula:
    return Iff(a, b)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class FormulaSyntaxError(ValueError):
    """Raised by :func:`parse`; carries a 1-based line/column and the expected tokens."""

    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at line {line}, column {column}{detail}")


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><->|->|[~&|()\[\],+-])"
)

_MODAL_KEYWORDS = {"A", "L", "E", "C", "K"}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident', an operator string, or 'EOF'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        if m.lastgroup == "ws":
            chunk = m.group()
            for k, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + k + 1
        elif m.lastgroup == "ident":
            tokens.append(_Token("ident", m.group(), line, col))
        else:
            tokens.append(_Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(_Token("EOF", "", line, pos - line_start + 1))
    return tokens


_UNARY_START = ("~", "(", "[", "ident")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def error(self, expected: Iterable[str]) -> FormulaSyntaxError:
        t = self.tok
        what = "end of input" if t.kind == "EOF" else f"token {t.text!r}"
        return FormulaSyntaxError(f"unexpected {what}", t.line, t.column, expected)

    def expect(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            raise self.error([kind])
        t = self.tok
        self.pos += 1
        return t

    def agent(self) -> str:
        if self.tok.kind != "ident":
            raise self.error(["agent"])
        return self.expect("ident").text

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok.kind != "EOF":
            raise self.error(["&", "|", "->", "<->", "EOF"])
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.tok.kind == "<->":
            self.pos += 1
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.or_()
        if self.tok.kind == "->":
            self.pos += 1
            return Imp(f, self.imp())
        return f

    def or_(self) -> Formula:
        f = self.and_()
        while self.tok.kind == "|":
            self.pos += 1
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.tok.kind == "&":
            self.pos += 1
            f = And(f, self.unary())
        return f

    def pair(self) -> tuple[str, str]:
        self.expect("[")
        i = self.agent()
        self.expect(",")
        j = self.agent()
        self.expect("]")
        return i, j

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "~":
            self.pos += 1
            return Not(self.unary())
        if t.kind == "(":
            self.pos += 1
            f = self.iff()
            self.expect(")")
            return f
        if t.kind == "[":
            sign = self.peek().kind
            if sign not in ("+", "-"):
                self.pos += 1
                raise self.error(["+", "-"])
            self.pos += 2
            content = self.iff()
            self.expect("]")
            i, j = self.pair()
            body = self.unary()
            cls = PlusUpdate if sign == "+" else MinusUpdate
            return cls(i, j, content, body)
        if t.kind == "ident":
            if t.text in _MODAL_KEYWORDS and self.peek().kind == "[":
                self.pos += 1
                if t.text == "L":
                    self.expect("[")
                    j = self.agent()
                    self.expect("]")
                    return ImplicitK(j, self.unary())
                i, j = self.pair()
                cls = {"A": Aware, "E": EqBox, "C": CBox, "K": ExplicitK}[t.text]
                return cls(i, j, self.unary())
            self.pos += 1
            return Prop(t.text)
        raise self.error(["~", "(", "[+", "[-", "A[", "L[", "E[", "C[", "K[", "proposition"])


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula; raises :class:`FormulaSyntaxError`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Imp: "->", Or: "|", And: "&"}
_UNARY_PREC = 5


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), _UNARY_PREC)


def _wrap(f: Formula, min_prec: int) -> str:
    s = render(f)
    return f"({s})" if _prec(f) < min_prec else s


def render(f: Formula) -> str:
    """Print ``f`` with the fewest parentheses that re-parse to the same tree."""
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Not):
        return "~" + _wrap(f.arg, _UNARY_PREC)
    if isinstance(f, BINARY):
        p = _PREC[type(f)]
        if isinstance(f, Imp):
            # right-associative
            left, right = _wrap(f.left, p + 1), _wrap(f.right, p)
        else:
            left, right = _wrap(f.left, p), _wrap(f.right, p + 1)
        return f"{left} {_SYMBOL[type(f)]} {right}"
    if isinstance(f, ImplicitK):
        return f"L[{f.j}] " + _wrap(f.arg, _UNARY_PREC)
    if isinstance(f, PAIR_MODALS):
        letter = {Aware: "A", EqBox: "E", CBox: "C", ExplicitK: "K"}[type(f)]
        return f"{letter}[{f.i},{f.j}] " + _wrap(f.arg, _UNARY_PREC)
    if isinstance(f, UPDATES):
        sign = "+" if isinstance(f, PlusUpdate) else "-"
        return f"[{sign}{render(f.content)}][{f.i},{f.j}] " + _wrap(f.body, _UNARY_PREC)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Structural functions
# ---------------------------------------------------------------------------


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal over every node, update contents included."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def atoms_of(f: Formula) -> frozenset[str]:
    """At(f): names of the atomic propositions occurring anywhere in ``f``."""
    return frozenset(g.name for g in walk(f) if isinstance(g, Prop))


def agents_of(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    for g in walk(f):
        if isinstance(g, ImplicitK):
            out.add(g.j)
        elif isinstance(g, PAIR_MODALS + UPDATES):
            out.update((g.i, g.j))
    return frozenset(out)


def subformulas(f: Formula) -> frozenset[Formula]:
    """sub(f): ``f`` and all of its proper subformulas."""
    return frozenset(walk(f))


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def depth(f: Formula) -> int:
    """Modal depth; awareness counts as a modality, updates count one level."""
    kids = f.children()
    below = max((depth(k) for k in kids), default=0)
    if isinstance(f, (Prop, Not) + BINARY):
        return below
    return below + 1


def has_dynamic(f: Formula) -> bool:
    return any(isinstance(g, UPDATES) for g in walk(f))


def to_core(f: Formula) -> Formula:
    """Rewrite Or/Imp/Iff into the primitive connectives ~ and &."""
    if isinstance(f, Prop):
        return f
    if isinstance(f, Not):
        return Not(to_core(f.arg))
    if isinstance(f, And):
        return And(to_core(f.left), to_core(f.right))
    if isinstance(f, Or):
        return Not(And(Not(to_core(f.left)), Not(to_core(f.right))))
    if isinstance(f, Imp):
        return Not(And(to_core(f.left), Not(to_core(f.right))))
    if isinstance(f, Iff):
        a, b = to_core(f.left), to_core(f.right)
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(f, ImplicitK):
        return ImplicitK(f.j, to_core(f.arg))
    if isinstance(f, PAIR_MODALS):
        return type(f)(f.i, f.j, to_core(f.arg))
    return type(f)(f.i, f.j, to_core(f.content), to_core(f.body))


def sort_key(f: Formula) -> tuple[int, str]:
    """Deterministic ordering used for printing formula sets."""
    return (size(f), render(f))


class ClosureError(ValueError):
    pass


def closure(f: Formula, agents: Iterable[str]) -> frozenset[Formula]:
    """cl(f): least set containing ``f`` and closed under the eleven closure rules.

    Index pairs are instantiated over the declared ``agents``. The two
    introspection rules for L_j and [=]^i_j fire only for boxes in sub(f);
    firing them for every member would never terminate (each L_j L_j psi would
    spawn L_j L_j L_j psi).
    """
    ags = sorted(set(agents))
    if not ags:
        raise ClosureError("closure needs a nonempty agent set")
    if has_dynamic(f):
        raise ClosureError("closure is undefined for formulas with update operators")
    missing = agents_of(f) - set(ags)
    if missing:
        raise ClosureError(f"formula mentions undeclared agents: {sorted(missing)}")

    seeds = _introspection_seeds(f)
    out: set[Formula] = set()
    todo: list[Formula] = [f, *seeds]
    while todo:
        g = todo.pop()
        if g in out:
            continue
        out.add(g)
        todo.extend(h for h in closure_rules(g, ags) if h not in out)
    return frozenset(out)


def _introspection_seeds(f: Formula) -> list[Formula]:
    """Members demanded by the L_j and [=]^i_j introspection rules for boxes in sub(f)."""
    seeds: list[Formula] = []
    for g in subformulas(f):
        if isinstance(g, ImplicitK):
            seeds += [ImplicitK(g.j, ImplicitK(g.j, g.arg)), ImplicitK(g.j, Not(ImplicitK(g.j, g.arg)))]
        elif isinstance(g, EqBox):
            seeds += [EqBox(g.i, g.j, g), EqBox(g.i, g.j, Not(g))]
    return seeds


def closure_rules(g: Formula, agents: Iterable[str]) -> list[Formula]:
    """Members that the remaining closure rules require once ``g`` is in the closure."""
    ags = sorted(set(agents))
    new: list[Formula] = list(g.children())
    if not isinstance(g, Not):
        new.append(Not(g))
    if isinstance(g, Prop):
        for i in ags:
            for j in ags:
                new += [
                    Aware(i, j, g),
                    And(Aware(i, i, g), Aware(i, j, g)),
                    And(Aware(i, i, g), Aware(i, i, g)),
                    EqBox(i, j, g),
                ]
    elif isinstance(g, Aware):
        new += [ImplicitK(k, g) for k in ags]
        new += [Aware(g.i, g.j, chi) for chi in subformulas(g.arg)]
    elif isinstance(g, CBox):
        new.append(EqBox(g.i, g.j, ImplicitK(g.j, g)))
    elif isinstance(g, ImplicitK) and isinstance(g.arg, (Aware, CBox)):
        new += [ImplicitK(g.j, g), ImplicitK(g.j, Not(g))]
    elif isinstance(g, EqBox) and _is_mix_box(g):
        new += [EqBox(g.i, g.j, g), EqBox(g.i, g.j, Not(g))]
    elif isinstance(g, ExplicitK):
        new += [Aware(g.i, g.j, g.arg), CBox(g.i, g.j, g.arg)]
    return new


def closure_step(members: Iterable[Formula], f: Formula, agents: Iterable[str]) -> frozenset[Formula]:
    """One parallel application of every closure rule to ``members`` (a fixpoint check)."""
    out = set(members) | {f} | set(_introspection_seeds(f))
    for g in list(out):
        out.update(closure_rules(g, agents))
    return frozenset(out)


def _is_mix_box(g: EqBox) -> bool:
    """True for formulas shaped [=]^i_j L_j C^i_j psi."""
    inner = g.arg
    return (
        isinstance(inner, ImplicitK)
        and inner.j == g.j
        and isinstance(inner.arg, CBox)
        and (inner.arg.i, inner.arg.j) == (g.i, g.j)
    )
