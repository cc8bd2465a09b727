import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alp.checker import satisfies
from alp.dynamics import UpdateError, UpdateMode, update_minus, update_plus
from alp.fixtures import store, store_aware
from alp.syntax import Prop, parse
from naive import naive_sat
from strategies import models

CLAIM = "[+n][b,b] K[b,b] K[b,a] p_b"
T, V = UpdateMode.TARGETED, UpdateMode.VIEWPOINT_WIDE


def test_viewpoint_update_reproduces_claim():
    m = update_plus(store(), "b", "b", Prop("n"), V)
    assert m.awareness[("b", "a")] == {"p_a", "p_b", "n"}
    assert m.indist("b", "b").is_identity()
    assert satisfies(m, "w1", parse("K[b,b] K[b,a] p_b"))
    assert satisfies(store(), "w1", parse(CLAIM), V)
    assert naive_sat(store(), "w1", parse(CLAIM), "viewpoint")


def test_targeted_update_does_not():
    m = update_plus(store(), "b", "b", Prop("n"), T)
    assert m.awareness[("b", "a")] == {"p_a", "p_b"}
    assert not satisfies(m, "w1", parse("K[b,b] K[b,a] p_b"))
    assert not satisfies(store(), "w1", parse(CLAIM), T)
    assert not naive_sat(store(), "w1", parse(CLAIM), "targeted")


def test_noop_update_returns_equal_model():
    m = store()
    assert update_plus(m, "a", "b", Prop("n")) == m
    assert update_plus(m, "b", "b", parse("p_a & p_b"), V) == m


def test_minus_gives_store_aware():
    assert update_minus(store(), "a", "b", Prop("n")) == store_aware()


def test_minus_then_plus_restores_partitions():
    m = store()
    back = update_plus(update_minus(m, "a", "a", Prop("n"), V), "a", "a", Prop("n"), V)
    assert back == m
    assert all(back.indist(*k) == m.indist(*k) for k in m.awareness)


def test_rejections():
    with pytest.raises(UpdateError):
        update_minus(store(), "b", "b", parse("p_a & p_b"))
    with pytest.raises(UpdateError):
        update_plus(store_aware(), "b", "a", Prop("n"))  # n is outside A^b_b
    with pytest.raises(UpdateError):
        update_minus(store(), "a", "a", Prop("n"))  # would leave n in A^a_b only
    with pytest.raises(UpdateError):
        update_plus(store(), "a", "z", Prop("n"))


def test_mode_parsing():
    assert UpdateMode.parse("viewpoint_wide") is V
    with pytest.raises(ValueError):
        UpdateMode.parse("global")


@settings(max_examples=80, deadline=None)
@given(models, st.sampled_from(["a", "b", "c"]), st.sampled_from(["p", "q", "r"]), st.sampled_from([T, V]))
def test_updates_touch_awareness_only(m, i, p, mode):
    up = update_plus(m, i, i, Prop(p), mode)
    assert up.same_structure(m)
    for k in m.awareness:
        assert up.indist(*k).refines(m.indist(*k))
    try:
        down = update_minus(m, i, i, Prop(p), V)
    except UpdateError:
        return
    assert down.same_structure(m)
    for k in m.awareness:
        assert m.indist(*k).refines(down.indist(*k))
