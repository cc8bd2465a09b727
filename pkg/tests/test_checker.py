import random

import pytest
from hypothesis import given, settings

from alp.checker import ScopeError, explain, extension, satisfies, valid_in_model
from alp.fixtures import STORE_BATTERY, store, store_aware
from alp.generate import random_formula, random_model
from alp.syntax import parse
from naive import bfs_block, naive_extension, naive_sat
from strategies import models, small_formulas


@pytest.mark.parametrize("text, expected", STORE_BATTERY)
def test_store_battery(text, expected):
    assert satisfies(store(), "w1", parse(text)) is expected
    assert naive_sat(store(), "w1", parse(text)) is expected


def test_variant_claim_is_false_under_literal_semantics():
    f = parse("K[a,a] K[a,b] ~K[a,a] p_b")
    assert satisfies(store_aware(), "w1", f) is False
    assert naive_sat(store_aware(), "w1", f) is False


def test_extension_examples():
    m = store()
    assert extension(m, parse("n")) == {"w1", "w3", "w5", "w7"}
    assert extension(m, parse("n & ~n")) == set()
    f = parse("K[b,a] p_b")
    assert extension(m, f) == naive_extension(m, f)


def test_valid_in_model_examples():
    m = store()
    assert valid_in_model(m, parse("L[b] p_b -> p_b"))
    assert not valid_in_model(m, parse("K[b,b] p_a"))
    assert valid_in_model(m, parse("p_a | ~p_a"))


def test_scope_errors():
    with pytest.raises(ScopeError):
        satisfies(store(), "w9", parse("p_a"))
    with pytest.raises(ScopeError):
        satisfies(store(), "w1", parse("q"))
    with pytest.raises(ScopeError):
        satisfies(store(), "w1", parse("L[z] p_a"))


def test_explain_reports_composed_blocks():
    verdict, trace = explain(store(), "w1", parse("K[b,b] K[b,a] p_b"))
    assert verdict is False
    blocks = {str(e.formula): set(e.partition.block("w1")) for e in trace}
    assert blocks["K[b,a] p_b"] == {"w1", "w2", "w3", "w4"}
    assert blocks["K[b,b] K[b,a] p_b"] == {"w1", "w2", "w5", "w6"}


@settings(max_examples=150, deadline=None)
@given(models, small_formulas())
def test_agrees_with_naive_evaluator(m, f):
    assert extension(m, f) == naive_extension(m, f)


@settings(max_examples=60, deadline=None)
@given(models, small_formulas(4))
def test_awareness_is_world_independent(m, f):
    for i in m.agents:
        ext = extension(m, parse(f"A[{i},a] ({f})"))
        assert ext in (frozenset(), frozenset(m.worlds))


@settings(max_examples=60, deadline=None)
@given(models, small_formulas(4))
def test_s5_and_factivity_facts(m, f):
    s = f"({f})"
    for text in [
        f"L[a] {s} -> {s}", f"~L[b] {s} -> L[b] ~L[b] {s}",
        f"E[a,b] {s} -> {s}", f"~E[b,a] {s} -> E[b,a] ~E[b,a] {s}",
        f"K[a,b] {s} -> {s}", f"K[c,c] {s} -> {s}",
        f"~K[a,b] {s} & A[a,b] ~K[a,b] {s} -> K[a,b] ~K[a,b] {s}",
    ]:
        assert valid_in_model(m, parse(text)), text


def test_c_matches_bfs_blocks_on_random_models():
    rng = random.Random(3)
    for _ in range(40):
        m = random_model(rng)
        f = random_formula(rng, 2, m.agents, m.props)
        ext = naive_extension(m, f)
        for i in m.agents:
            for j in m.agents:
                got = extension(m, parse(f"C[{i},{j}] ({f})"))
                want = {w for w in m.worlds if bfs_block(m, i, j, w) <= ext}
                assert got == want


def test_unguarded_introspection_fails_everywhere_on_store():
    assert extension(store(), parse("~K[b,b] n -> K[b,b] ~K[b,b] n")) == set()
