import itertools
import random

import pytest

from alp.checker import satisfies
from alp.decide import (
    BudgetExceeded, DecideError, bounded_search, build_atoms, satisfiable, set_partitions, valid,
)
from alp.generate import random_formula
from alp.model import validate
from alp.proofs import SCHEMAS, instantiate, schema_metavariables
from alp.syntax import Not, Prop, parse


def test_atoms_for_a_prop():
    atoms = build_atoms(parse("p"), {"a"})
    assert len(atoms) == 2
    for a in atoms:
        assert (Prop("p") in a) != (Not(Prop("p")) in a)


def test_atoms_respect_kac():
    f = parse("K[a,a] p")
    for a in build_atoms(f, {"a"}):
        if f in a:
            assert parse("A[a,a] p") in a and parse("C[a,a] p") in a


def test_atoms_respect_mix():
    f = parse("C[a,a] p")
    for a in build_atoms(f, {"a"}):
        if f in a:
            assert Prop("p") in a


def test_build_atoms_is_deterministic():
    f = parse("K[a,b] p & ~L[b] q")
    assert build_atoms(f) == build_atoms(f)


def test_full_closure_mode_agrees():
    for text in ["~(L[b] p -> p)", "~K[a,a] p & A[a,a] ~K[a,a] p", "C[a,a] p & ~p"]:
        f = parse(text)
        assert bool(satisfiable(f, {"a", "b"})) == bool(satisfiable(f, {"a", "b"}, closure_mode="full"))


@pytest.mark.parametrize("text", ["p & ~p", "~(L[b] p -> p)", "K[a,a] p & ~p", "~(C[a,b] p -> E[a,b] L[b] C[a,b] p)"])
def test_unsatisfiable(text):
    res = satisfiable(parse(text))
    assert not res and res.witness is None


def test_satisfiable_with_checked_witness():
    f = parse("~K[b,b] n & A[b,b] p_b")
    res = satisfiable(f, {"a", "b"})
    assert res
    assert satisfies(res.witness, res.world, f)
    assert validate(res.witness.to_dict()) == res.witness


def test_introspection_validities():
    assert not valid(parse("~K[a,a] p -> K[a,a] ~K[a,a] p"))
    assert valid(parse("~K[a,a] p & A[a,a] ~K[a,a] p -> K[a,a] ~K[a,a] p"))


def test_subset_constraint_is_known():
    assert valid(parse("E[a,b] p -> E[a,a] p"))
    assert not valid(parse("E[a,a] p -> E[a,b] p"))
    assert valid(parse("A[a,b] p -> A[a,a] p"))


@pytest.mark.parametrize("name", [n for n in SCHEMAS if SCHEMAS[n] is not None])
def test_schema_instances_are_valid(name):
    fvars, avars = schema_metavariables(name)
    for agents in itertools.product("ab", repeat=len(avars)):
        sub = dict(zip(sorted(avars), agents))
        sub.update({v: Prop("p") for v in fvars})
        assert valid(instantiate(SCHEMAS[name], sub), {"a", "b"}), (name, sub)


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        satisfiable(parse("K[a,b] K[b,a] (p & q)"), max_atoms=10)
    assert info.value.closure_size > 0


def test_dynamic_formulas_rejected():
    with pytest.raises(DecideError):
        satisfiable(parse("[+p][a,a] q"))


def test_pruning_reaches_fixpoint_within_atom_count():
    rng = random.Random(9)
    for _ in range(50):
        f = random_formula(rng, 4, ("a", "b"), ("p", "q"), modal_depth=2)
        res = satisfiable(f, {"a", "b"})
        assert res.iterations <= max(1, res.atoms) + 1


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_bounded_search_examples():
    assert bounded_search(parse("p & ~p"), 3, 1) is None
    m, w = bounded_search(parse("~A[a,b] p"), 2, 2)
    assert "p" not in m.awareness[("a", "b")]
    assert len(m.worlds) == 1
    assert bounded_search(parse("K[a,a] p & ~p"), 3, 1) is None


def test_decide_agrees_with_bounded_search():
    rng = random.Random(21)
    for _ in range(120):
        f = random_formula(rng, 4, ("a", "b"), ("p", "q"), modal_depth=2)
        if rng.random() < 0.5:
            f = Not(f)
        res = satisfiable(f, {"a", "b"})
        found = bounded_search(f, 3, 2, {"a", "b"})
        if found is not None:
            assert res
        if res:
            assert satisfies(res.witness, res.world, f)
