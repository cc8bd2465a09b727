"""Hypothesis strategies for formulas and models."""
from hypothesis import strategies as st

from alp.generate import random_model
from alp.syntax import (
    And, Aware, CBox, EqBox, ExplicitK, Iff, Imp, ImplicitK, MinusUpdate, Not, Or, PlusUpdate, Prop,
)

agents = st.sampled_from(["a", "b", "c"])
props = st.sampled_from(["p", "q", "r", "p_a", "n"]).map(Prop)


def formulas(max_leaves: int = 12, dynamic: bool = True):
    def extend(sub):
        options = [
            sub.map(Not),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Imp, sub, sub),
            st.builds(Iff, sub, sub),
            st.builds(Aware, agents, agents, sub),
            st.builds(ImplicitK, agents, sub),
            st.builds(EqBox, agents, agents, sub),
            st.builds(CBox, agents, agents, sub),
            st.builds(ExplicitK, agents, agents, sub),
        ]
        if dynamic:
            options += [
                st.builds(PlusUpdate, agents, agents, sub, sub),
                st.builds(MinusUpdate, agents, agents, sub, sub),
            ]
        return st.one_of(*options)

    return st.recursive(props, extend, max_leaves=max_leaves)


def small_formulas(max_leaves: int = 6):
    """Dynamic-free formulas over agents a, b, c and props p, q, r."""
    base = st.sampled_from(["p", "q", "r"]).map(Prop)

    def extend(sub):
        return st.one_of(
            sub.map(Not),
            st.builds(And, sub, sub),
            st.builds(Imp, sub, sub),
            st.builds(Aware, agents, agents, sub),
            st.builds(ImplicitK, agents, sub),
            st.builds(EqBox, agents, agents, sub),
            st.builds(CBox, agents, agents, sub),
            st.builds(ExplicitK, agents, agents, sub),
        )

    return st.recursive(base, extend, max_leaves=max_leaves)


models = st.randoms(use_true_random=False).map(lambda rng: random_model(rng, max_worlds=5))
