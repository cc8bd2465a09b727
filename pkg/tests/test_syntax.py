import pytest
from hypothesis import given, settings

from alp.syntax import (
    And, Aware, CBox, ClosureError, EqBox, ExplicitK, FormulaSyntaxError, ImplicitK, Not, Or, PlusUpdate, Prop,
    atoms_of, closure, closure_step, depth, parse, render, subformulas, to_core,
)
from strategies import formulas


def test_parse_atom():
    assert parse("p_b") == Prop("p_b")


def test_parse_nested_explicit_knowledge():
    assert parse("K[b,b] K[b,a] p_b") == ExplicitK("b", "b", ExplicitK("b", "a", Prop("p_b")))


def test_parse_update():
    f = parse("[+n][b,b] K[b,b] K[b,a] p_b")
    assert f == PlusUpdate("b", "b", Prop("n"), ExplicitK("b", "b", ExplicitK("b", "a", Prop("p_b"))))


def test_precedence_and_associativity():
    assert parse("p & q | r") == Or(And(Prop("p"), Prop("q")), Prop("r"))
    assert parse("p -> q -> r") == parse("p -> (q -> r)")
    assert parse("~L[a] p & q") == And(Not(ImplicitK("a", Prop("p"))), Prop("q"))
    assert parse("  p\n&\tq ") == parse("p&q")


def test_modal_letters_are_props_without_bracket():
    assert parse("A & K") == And(Prop("A"), Prop("K"))


def test_render_examples():
    assert render(Prop("p")) == "p"
    assert render(Not(ExplicitK("b", "b", Prop("p_a")))) == "~K[b,b] p_a"
    assert render(And(Prop("p"), Prop("q"))) == "p & q"
    assert render(parse("(p -> q) -> r")) == "(p -> q) -> r"


@pytest.mark.parametrize("text, col", [("p &", 4), ("K[a] p", 4), ("(p", 3), ("p q", 3), ("", 1)])
def test_syntax_errors_report_position(text, col):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.line == 1
    assert info.value.column == col
    assert info.value.expected


def test_syntax_error_on_second_line():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p &\n  & q")
    assert (info.value.line, info.value.column) == (2, 3)


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_render_parse_round_trip(f):
    assert parse(render(f)) == f


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_atoms_monotone_over_subformulas(f):
    for g in subformulas(f):
        assert atoms_of(g) <= atoms_of(f)


def test_atoms_of_examples():
    assert atoms_of(parse("K[b,a] p_b")) == {"p_b"}
    assert atoms_of(parse("[+n][b,b] p_a")) == {"n", "p_a"}


def test_subformulas_examples():
    assert subformulas(parse("~p")) == {parse("~p"), Prop("p")}
    assert subformulas(parse("K[b,a] p_b")) == {parse("K[b,a] p_b"), Prop("p_b")}
    assert subformulas(parse("[+n][b,b] p")) == {parse("[+n][b,b] p"), Prop("n"), Prop("p")}


def test_depth_counts_modalities():
    assert depth(parse("p & ~q")) == 0
    assert depth(parse("K[a,b] L[a] p & A[a,a] q")) == 2


def test_closure_spot_members():
    c = closure(parse("p"), {"a", "b"})
    for text in ["p", "~p", "A[a,b] p", "E[a,b] p", "A[a,a] p & A[a,b] p", "A[a,a] p & A[a,a] p"]:
        assert parse(text) in c
    assert parse("E[a,b] L[b] C[a,b] p") in closure(parse("C[a,b] p"), {"a", "b"})
    ck = closure(parse("K[a,b] p"), {"a", "b"})
    assert parse("A[a,b] p") in ck and parse("C[a,b] p") in ck


def test_closure_introspection_members():
    c = closure(parse("L[a] p"), {"a"})
    assert parse("L[a] L[a] p") in c and parse("L[a] ~L[a] p") in c
    c = closure(parse("C[a,b] p"), {"a", "b"})
    assert parse("E[a,b] E[a,b] L[b] C[a,b] p") in c
    assert parse("L[b] L[b] C[a,b] p") in c


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=5, dynamic=False))
def test_closure_is_a_finite_fixpoint(f):
    agents = {"a", "b", "c"}
    c = closure(f, agents)
    assert subformulas(f) <= c
    assert closure_step(c, f, agents) == c


def test_closure_rejects_dynamic_and_unknown_agents():
    with pytest.raises(ClosureError):
        closure(parse("[+p][a,a] q"), {"a"})
    with pytest.raises(ClosureError):
        closure(parse("L[b] p"), {"a"})
    with pytest.raises(ClosureError):
        closure(parse("p"), set())


def test_closure_deterministic_size():
    assert len(closure(parse("p"), {"a"})) == len(closure(parse("p"), ["a"])) == 14


@settings(max_examples=100, deadline=None)
@given(formulas(dynamic=False))
def test_to_core_uses_only_not_and(f):
    from alp.syntax import Iff, Imp, walk
    assert not any(isinstance(g, (Or, Imp, Iff)) for g in walk(to_core(f)))


def test_pair_modal_fields():
    f = parse("E[a,b] C[b,c] A[c,a] p")
    assert isinstance(f, EqBox) and isinstance(f.arg, CBox) and isinstance(f.arg.arg, Aware)
    assert (f.arg.arg.i, f.arg.arg.j) == ("c", "a")
