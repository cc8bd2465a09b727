import itertools
import random

import pytest
from hypothesis import given, settings

from alp.checker import valid_in_model
from alp.generate import random_instance, random_model
from alp.proofs import (
    MP, PREMISE, SCHEMAS, Axiom, CG, EqG, LG, ProofScript, ScriptSyntaxError, check_proof, derive_factivity,
    instantiate, is_tautology, match_axiom, parse_script,
)
from alp.syntax import Prop, parse
from strategies import small_formulas


def test_match_examples():
    m = match_axiom(parse("K[a,b] p <-> A[a,b] p & C[a,b] p"))
    assert m.schema == "KAC"
    assert m.substitution["φ"] == Prop("p") and m.substitution["i"] == "a" and m.substitution["j"] == "b"
    assert match_axiom(parse("A[a,b] p <-> A[a,b] ~p")).schema == "AN"
    assert match_axiom(parse("~L[b] p -> L[b] p")) is None
    assert match_axiom(parse("p -> (q -> p)")).schema == "TAUT"
    assert match_axiom(parse("A[a,b] q & q -> E[a,b] q")).schema == "ANEQ"


def test_aneq_needs_an_atom():
    assert match_axiom(parse("A[a,b] ~q & ~q -> E[a,b] ~q")) is None


def test_agent_metavariables_must_be_consistent():
    assert match_axiom(parse("L[a] (p -> q) -> L[b] p -> L[a] q")) is None
    assert match_axiom(parse("A[a,a] p <-> A[a,a] A[a,a] p")).schema == "AA"


def test_every_schema_round_trips_through_matching():
    rng = random.Random(4)
    for name in SCHEMAS:
        for _ in range(40):
            f = random_instance(rng, name)
            hit = match_axiom(f)
            assert hit is not None
            if hit.schema != "TAUT":
                assert instantiate(SCHEMAS[hit.schema], hit.substitution) == f


@settings(max_examples=200, deadline=None)
@given(small_formulas(6))
def test_no_false_taut(f):
    if is_tautology(f):
        for m in (random_model(random.Random(k)) for k in range(5)):
            assert valid_in_model(m, f)


def test_tautology_truth_table_oracle():
    assert is_tautology(parse("L[a] p | ~L[a] p"))
    assert not is_tautology(parse("L[a] p -> p"))
    assert not is_tautology(parse("K[a,b] p -> K[a,b] q"))


KAC_LINE = "K[a,b] p <-> A[a,b] p & C[a,b] p"
TAUT_LINE = "(K[a,b] p <-> A[a,b] p & C[a,b] p) -> K[a,b] p -> C[a,b] p"


def test_three_line_script_and_its_mutation():
    good = ProofScript.of((KAC_LINE, Axiom("KAC")), (TAUT_LINE, Axiom("TAUT")), ("K[a,b] p -> C[a,b] p", MP(1, 2)))
    assert check_proof(good).accepted
    bad = ProofScript.of((KAC_LINE, Axiom("KAC")), (TAUT_LINE, Axiom("TAUT")), ("K[a,b] p -> A[a,b] q", MP(1, 2)))
    verdict = check_proof(bad)
    assert not verdict.accepted and verdict.first_failure[0] == 3


def test_generalisation_rules():
    assert check_proof(ProofScript.of(("p -> p", Axiom("TAUT")), ("L[a] (p -> p)", LG(1, "a"))))
    assert check_proof(ProofScript.of(("p -> p", Axiom("TAUT")), ("E[a,b] (p -> p)", EqG(1, "a", "b"))))
    assert check_proof(ProofScript.of(("p -> p", Axiom("TAUT")), ("C[b,a] (p -> p)", CG(1, "b", "a"))))
    assert not check_proof(ProofScript.of(("p -> p", Axiom("TAUT")), ("C[b,a] (p -> p)", CG(1, "a", "b"))))


def test_premises_and_bad_references():
    assert check_proof(ProofScript.of(("q", PREMISE), ("L[a] q", LG(1, "a"))))
    forward = ProofScript.of(("p -> p", MP(2, 2)), ("p -> p", Axiom("TAUT")))
    assert check_proof(forward).first_failure[0] == 1
    self_cite = ProofScript.of(("p -> p", Axiom("TAUT")), ("L[a] (p -> p)", LG(2, "a")))
    assert not check_proof(self_cite)


@pytest.mark.parametrize("i, j", list(itertools.product("ab", repeat=2)))
def test_factivity_scripts(i, j):
    script = derive_factivity(i, j, Prop("p"))
    assert check_proof(script)
    assert script.conclusion == parse(f"K[{i},{j}] p -> p")
    assert check_proof(parse_script(str(script)))


def test_factivity_for_store_props():
    assert check_proof(derive_factivity("b", "b", Prop("p_a")))


def test_script_format():
    text = """
    # factivity fragment
    1. p -> p ; AX TAUT
    2. L[a] (p -> p) ; LG 1 a
    """
    s = parse_script(text)
    assert len(s.lines) == 2 and check_proof(s)
    with pytest.raises(ScriptSyntaxError):
        parse_script("1. p -> p AX TAUT")
    with pytest.raises(ScriptSyntaxError):
        parse_script("1. p -> ; AX TAUT")
    with pytest.raises(ScriptSyntaxError):
        parse_script("1. p ; MP 1")
