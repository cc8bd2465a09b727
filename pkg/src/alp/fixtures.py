"""Bundled models from the convenience-store example.

``store``: owner a is aware of p_a, p_b and the new procurement route n; from
b's viewpoint both owners are aware of p_a and p_b only. Owner a does not
realise b is unaware of n, so A^a_b also contains n.

``store-aware``: identical except that a knows b is unaware of n
(A^a_b = {p_a, p_b}).
"""
from __future__ import annotations

import copy
from dataclasses import dataclass

from .model import Model, validate

STORE_DOC = {
    "agents": ["a", "b"],
    "props": ["p_a", "p_b", "n"],
    "worlds": {
        "w1": {"p_a": True, "p_b": True, "n": True},
        "w2": {"p_a": True, "p_b": True, "n": False},
        "w3": {"p_a": True, "p_b": False, "n": True},
        "w4": {"p_a": True, "p_b": False, "n": False},
        "w5": {"p_a": False, "p_b": True, "n": True},
        "w6": {"p_a": False, "p_b": True, "n": False},
        "w7": {"p_a": False, "p_b": False, "n": True},
        "w8": {"p_a": False, "p_b": False, "n": False},
    },
    "relations": {
        "a": {"edges": [["w2", "w4"], ["w6", "w8"]], "closure": "equivalence"},
        "b": {"edges": [["w2", "w6"], ["w4", "w8"]], "closure": "equivalence"},
    },
    "awareness": {
        "a": {"a": ["p_a", "p_b", "n"], "b": ["p_a", "p_b", "n"]},
        "b": {"a": ["p_a", "p_b"], "b": ["p_a", "p_b"]},
    },
}

STORE_AWARE_DOC = copy.deepcopy(STORE_DOC)
STORE_AWARE_DOC["awareness"]["a"]["b"] = ["p_a", "p_b"]


@dataclass(frozen=True)
class Fixture:
    name: str
    model: Model
    notes: str


#: (formula, verdict at w1 claimed in the worked example or derived for the variant)
STORE_BATTERY = [
    ("K[b,b] K[b,a] p_b", False),
    ("K[b,b] ~K[b,a] p_b", True),
    ("~K[b,b] p_a", True),
    ("K[b,a] K[b,b] ~K[b,a] p_b", True),
    ("K[a,a] K[a,b] ~K[a,a] p_b", False),
]


def store() -> Model:
    return validate(STORE_DOC)


def store_aware() -> Model:
    return validate(STORE_AWARE_DOC)


FIXTURES = {
    "store": lambda: Fixture("store", store(), "Kripke model of the store example, a's full awareness"),
    "store-aware": lambda: Fixture(
        "store-aware", store_aware(), "store with A^a_b = {p_a, p_b}: a knows b is unaware of n"
    ),
}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}") from None
