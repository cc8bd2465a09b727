"""Hilbert system: axiom-schema recognition and derivation checking.

Schema patterns are ordinary formulas in which propositions named ``φ``/``ψ``
stand for arbitrary formulas, ``p*`` for an atomic proposition, and agent
names ``i``, ``j``, ``k``, ``l`` are agent metavariables. Agent metavariables
must be instantiated consistently but distinct metavariables may coincide.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .syntax import (
    BINARY,
    PAIR_MODALS,
    And,
    Aware,
    CBox,
    EqBox,
    ExplicitK,
    Formula,
    FormulaSyntaxError,
    Iff,
    Imp,
    ImplicitK,
    Not,
    Or,
    Prop,
    has_dynamic,
    parse,
    render,
)

PHI, PSI, PVAR = "φ", "ψ", "p*"
AGENT_VARS = ("i", "j", "k", "l")


def _pat(text: str) -> Formula:
    text = text.replace("phi", "_PHI").replace("psi", "_PSI").replace("pv", "_PV")
    f = parse(text)
    return _rename(f, {"_PHI": PHI, "_PSI": PSI, "_PV": PVAR})


def _rename(f: Formula, names: dict[str, str]) -> Formula:
    if isinstance(f, Prop):
        return Prop(names.get(f.name, f.name))
    if isinstance(f, Not):
        return Not(_rename(f.arg, names))
    if isinstance(f, BINARY):
        return type(f)(_rename(f.left, names), _rename(f.right, names))
    if isinstance(f, ImplicitK):
        return ImplicitK(f.j, _rename(f.arg, names))
    return type(f)(f.i, f.j, _rename(f.arg, names))


# Order matters: match_axiom reports the first hit.
SCHEMAS: dict[str, Formula | None] = {
    "TAUT": None,
    "AN": _pat("A[i,j] phi <-> A[i,j] ~phi"),
    "AC": _pat("A[i,j] (phi & psi) <-> A[i,j] phi & A[i,j] psi"),
    "AA": _pat("A[i,j] phi <-> A[i,j] A[k,l] phi"),
    "AEQ": _pat("A[i,j] phi <-> A[i,j] E[k,l] phi"),
    "ACM": _pat("A[i,j] phi <-> A[i,j] C[k,l] phi"),
    "AL": _pat("A[i,j] phi <-> A[i,j] L[k] phi"),
    "AK": _pat("A[i,j] phi <-> A[i,j] K[k,l] phi"),
    "ANEQ": _pat("A[i,j] pv & pv -> E[i,j] pv"),
    "K_L": _pat("L[j] (phi -> psi) -> L[j] phi -> L[j] psi"),
    "T_L": _pat("L[j] phi -> phi"),
    "5_L": _pat("~L[j] phi -> L[j] ~L[j] phi"),
    "K_EQ": _pat("E[i,j] (phi -> psi) -> E[i,j] phi -> E[i,j] psi"),
    "T_EQ": _pat("E[i,j] phi -> phi"),
    "5_EQ": _pat("~E[i,j] phi -> E[i,j] ~E[i,j] phi"),
    "K_C": _pat("C[i,j] (phi -> psi) -> C[i,j] phi -> C[i,j] psi"),
    "MIX": _pat("C[i,j] phi -> phi & E[i,j] L[j] C[i,j] phi"),
    "IND": _pat("C[i,j] (phi -> E[i,j] L[j] phi) -> phi -> C[i,j] phi"),
    "KAC": _pat("K[i,j] phi <-> A[i,j] phi & C[i,j] phi"),
}

RULES = ("MP", "LG", "EQG", "CG")


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------


def _match(pat: Formula, f: Formula, sub: dict) -> bool:
    if isinstance(pat, Prop) and pat.name in (PHI, PSI):
        bound = sub.get(pat.name)
        if bound is None:
            sub[pat.name] = f
            return True
        return bound == f
    if isinstance(pat, Prop) and pat.name == PVAR:
        if not isinstance(f, Prop):
            return False
        bound = sub.get(PVAR)
        if bound is None:
            sub[PVAR] = f
            return True
        return bound == f
    if type(pat) is not type(f):
        return False
    if isinstance(pat, Prop):
        return pat.name == f.name
    if isinstance(pat, Not):
        return _match(pat.arg, f.arg, sub)
    if isinstance(pat, BINARY):
        return _match(pat.left, f.left, sub) and _match(pat.right, f.right, sub)
    agent_pairs = [(pat.j, f.j)] if isinstance(pat, ImplicitK) else [(pat.i, f.i), (pat.j, f.j)]
    for var, agent in agent_pairs:
        bound = sub.setdefault(var, agent)
        if bound != agent:
            return False
    return _match(pat.arg, f.arg, sub)


def instantiate(pattern: Formula, sub: dict) -> Formula:
    """Apply a substitution (metavariable -> formula or agent name) to a pattern."""
    if isinstance(pattern, Prop):
        return sub.get(pattern.name, pattern) if pattern.name in (PHI, PSI, PVAR) else pattern
    if isinstance(pattern, Not):
        return Not(instantiate(pattern.arg, sub))
    if isinstance(pattern, BINARY):
        return type(pattern)(instantiate(pattern.left, sub), instantiate(pattern.right, sub))
    if isinstance(pattern, ImplicitK):
        return ImplicitK(sub.get(pattern.j, pattern.j), instantiate(pattern.arg, sub))
    return type(pattern)(sub.get(pattern.i, pattern.i), sub.get(pattern.j, pattern.j), instantiate(pattern.arg, sub))


def skeleton_letters(f: Formula) -> list[Formula]:
    """Maximal non-boolean subformulas of ``f``, each treated as one propositional letter."""
    seen: dict[Formula, None] = {}

    def go(g: Formula):
        if isinstance(g, Not):
            go(g.arg)
        elif isinstance(g, BINARY):
            go(g.left)
            go(g.right)
        else:
            seen.setdefault(g, None)

    go(f)
    return list(seen)


def _truth(f: Formula, env: dict) -> bool:
    if isinstance(f, Not):
        return not _truth(f.arg, env)
    if isinstance(f, And):
        return _truth(f.left, env) and _truth(f.right, env)
    if isinstance(f, Or):
        return _truth(f.left, env) or _truth(f.right, env)
    if isinstance(f, Imp):
        return (not _truth(f.left, env)) or _truth(f.right, env)
    if isinstance(f, Iff):
        return _truth(f.left, env) == _truth(f.right, env)
    return env[f]


MAX_TAUT_LETTERS = 20


def is_tautology(f: Formula) -> bool:
    """Truth-table check of the boolean skeleton of ``f``."""
    letters = skeleton_letters(f)
    if len(letters) > MAX_TAUT_LETTERS:
        raise ValueError(f"boolean skeleton has {len(letters)} letters; limit is {MAX_TAUT_LETTERS}")
    for values in itertools.product((False, True), repeat=len(letters)):
        if not _truth(f, dict(zip(letters, values))):
            return False
    return True


@dataclass(frozen=True)
class AxiomMatch:
    schema: str
    substitution: dict = field(hash=False)


def match_axiom(f: Formula) -> AxiomMatch | None:
    """Return the first schema (in SCHEMAS order) of which ``f`` is an instance."""
    if has_dynamic(f):
        return None
    if is_tautology(f):
        return AxiomMatch("TAUT", {})
    for name, pat in SCHEMAS.items():
        if pat is None:
            continue
        sub: dict = {}
        if _match(pat, f, sub):
            return AxiomMatch(name, sub)
    return None


def is_instance(f: Formula, schema: str) -> bool:
    if schema == "TAUT":
        return not has_dynamic(f) and is_tautology(f)
    pat = SCHEMAS[schema]
    return not has_dynamic(f) and _match(pat, f, {})


# ---------------------------------------------------------------------------
# Proof scripts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Justification:
    """``kind`` is ``AX``, ``MP``, ``LG``, ``EQG``, ``CG`` or ``PREMISE``."""

    kind: str
    refs: tuple[int, ...] = ()
    agents: tuple[str, ...] = ()
    schema: str | None = None

    def __str__(self) -> str:
        if self.kind == "AX":
            return f"AX {self.schema}"
        if self.kind == "PREMISE":
            return "PREMISE"
        return " ".join([self.kind, *map(str, self.refs), *self.agents])


def Axiom(name: str) -> Justification:
    return Justification("AX", schema=name)


def MP(a: int, b: int) -> Justification:
    """From line ``a`` (phi) and line ``b`` (phi -> psi) conclude psi."""
    return Justification("MP", (a, b))


def LG(n: int, j: str) -> Justification:
    return Justification("LG", (n,), (j,))


def EqG(n: int, i: str, j: str) -> Justification:
    return Justification("EQG", (n,), (i, j))


def CG(n: int, i: str, j: str) -> Justification:
    return Justification("CG", (n,), (i, j))


PREMISE = Justification("PREMISE")


@dataclass(frozen=True)
class ProofLine:
    index: int
    formula: Formula
    justification: Justification

    def __str__(self) -> str:
        return f"{self.index}. {render(self.formula)} ; {self.justification}"


@dataclass(frozen=True)
class ProofScript:
    lines: tuple[ProofLine, ...]

    @classmethod
    def of(cls, *items: tuple[Formula | str, Justification]) -> "ProofScript":
        lines = []
        for n, (f, just) in enumerate(items, start=1):
            lines.append(ProofLine(n, parse(f) if isinstance(f, str) else f, just))
        return cls(tuple(lines))

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    @property
    def premises(self) -> list[Formula]:
        return [ln.formula for ln in self.lines if ln.justification.kind == "PREMISE"]

    def __str__(self) -> str:
        return "\n".join(map(str, self.lines)) + "\n"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    first_failure: tuple[int, str] | None = None

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "accepted"
        n, reason = self.first_failure
        return f"rejected at line {n}: {reason}"


class ScriptSyntaxError(ValueError):
    pass


_LINE_RE = re.compile(r"^\s*(\d+)\s*\.\s*(.*?)\s*;\s*(.*?)\s*$")


def parse_script(text: str) -> ProofScript:
    """Read the line-oriented format ``<n>. <formula> ; <JUST>``.

    Blank lines and lines starting with ``#`` are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        m = _LINE_RE.match(raw)
        if not m:
            raise ScriptSyntaxError(f"line {lineno}: expected '<n>. <formula> ; <justification>'")
        n, ftext, jtext = int(m.group(1)), m.group(2), m.group(3)
        try:
            f = parse(ftext)
        except FormulaSyntaxError as exc:
            raise ScriptSyntaxError(f"line {lineno}: {exc}") from None
        lines.append(ProofLine(n, f, _parse_justification(jtext, lineno)))
    return ProofScript(tuple(lines))


def _parse_justification(text: str, lineno: int) -> Justification:
    parts = text.split()
    if not parts:
        raise ScriptSyntaxError(f"line {lineno}: missing justification")
    kind, args = parts[0].upper(), parts[1:]
    try:
        if kind == "AX" and len(args) == 1:
            return Axiom(args[0])
        if kind == "PREMISE" and not args:
            return PREMISE
        if kind == "MP" and len(args) == 2:
            return MP(int(args[0]), int(args[1]))
        if kind == "LG" and len(args) == 2:
            return LG(int(args[0]), args[1])
        if kind in ("EQG", "CG") and len(args) == 3:
            return Justification(kind, (int(args[0]),), (args[1], args[2]))
    except ValueError:
        pass
    raise ScriptSyntaxError(f"line {lineno}: malformed justification {text!r}")


def _check_line(line: ProofLine, proved: dict[int, Formula]) -> str | None:
    just, f = line.justification, line.formula
    for r in just.refs:
        if r >= line.index:
            return f"line {r} cited from line {line.index} (only earlier lines may be cited)"
        if r not in proved:
            return f"line {r} does not exist"
    if has_dynamic(f):
        return "formulas with update operators are outside the Hilbert system"
    if just.kind == "PREMISE":
        return None
    if just.kind == "AX":
        if just.schema not in SCHEMAS:
            return f"unknown axiom schema {just.schema!r}"
        if not is_instance(f, just.schema):
            return f"not an instance of {just.schema}"
        return None
    if just.kind == "MP":
        a, b = (proved[r] for r in just.refs)
        if not (isinstance(b, Imp) and b.left == a and b.right == f):
            return f"MP shape mismatch: line {just.refs[1]} is not '{render(a)} -> {render(f)}'"
        return None
    (premise,) = (proved[r] for r in just.refs)
    if just.kind == "LG":
        expected = ImplicitK(just.agents[0], premise)
    elif just.kind == "EQG":
        expected = EqBox(*just.agents, premise)
    elif just.kind == "CG":
        expected = CBox(*just.agents, premise)
    else:
        return f"unknown rule {just.kind!r}"
    if f != expected:
        return f"{just.kind} shape mismatch: expected {render(expected)}"
    return None


def check_proof(script: ProofScript) -> Verdict:
    """Check every line; report the first failing one."""
    proved: dict[int, Formula] = {}
    if not script.lines:
        return Verdict(False, (0, "empty script"))
    for line in script.lines:
        if line.index in proved:
            return Verdict(False, (line.index, f"duplicate line number {line.index}"))
        reason = _check_line(line, proved)
        if reason is not None:
            return Verdict(False, (line.index, reason))
        proved[line.index] = line.formula
    return Verdict(True)


def derive_factivity(i: str, j: str, f: Formula) -> ProofScript:
    """A derivation of K^i_j f -> f from KAC and MIX."""
    if has_dynamic(f):
        raise ValueError("update operators have no axioms")
    k, a, c = ExplicitK(i, j, f), Aware(i, j, f), CBox(i, j, f)
    kac = Iff(k, And(a, c))
    mix = Imp(c, And(f, EqBox(i, j, ImplicitK(j, c))))
    goal = Imp(k, f)
    return ProofScript.of(
        (kac, Axiom("KAC")),
        (mix, Axiom("MIX")),
        (Imp(kac, Imp(mix, goal)), Axiom("TAUT")),
        (Imp(mix, goal), MP(1, 3)),
        (goal, MP(2, 4)),
    )


def schema_metavariables(name: str) -> tuple[set[str], set[str]]:
    """(formula metavariables, agent metavariables) used by a schema pattern."""
    pat = SCHEMAS[name]
    fvars: set[str] = set()
    avars: set[str] = set()
    stack = [pat]
    while stack:
        g = stack.pop()
        if isinstance(g, Prop):
            if g.name in (PHI, PSI, PVAR):
                fvars.add(g.name)
        elif isinstance(g, ImplicitK):
            avars.add(g.j)
        elif isinstance(g, PAIR_MODALS):
            avars.update((g.i, g.j))
        stack.extend(g.children())
    return fvars, avars


def instantiate_schema(name: str, formulas: dict[str, Formula], agents: dict[str, str]) -> Formula:
    return instantiate(SCHEMAS[name], {**formulas, **agents})
