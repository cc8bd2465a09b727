"""Awareness updates: becoming aware of / becoming unaware of a formula.

Updates only touch the awareness sets. Worlds, relations and valuation are
carried over unchanged, and indistinguishability is recomputed from the new
awareness sets by the returned model.
"""
from __future__ import annotations

import enum

from .model import E_EMPTY_AWARENESS, E_NOT_SUBSET, E_UNKNOWN_REF, Model, ModelError
from .syntax import Formula, atoms_of


class UpdateMode(enum.Enum):
    #: change only A^i_j
    TARGETED = "targeted"
    #: change A^i_l for every agent l
    VIEWPOINT_WIDE = "viewpoint"

    @classmethod
    def parse(cls, text: str) -> "UpdateMode":
        aliases = {"targeted": cls.TARGETED, "viewpoint": cls.VIEWPOINT_WIDE, "viewpoint_wide": cls.VIEWPOINT_WIDE}
        try:
            return aliases[text]
        except KeyError:
            raise ValueError(f"unknown update mode {text!r}; use 'targeted' or 'viewpoint'") from None


class UpdateError(ModelError):
    """An update whose result would violate the model invariants."""


def _targets(m: Model, i: str, j: str, mode: UpdateMode) -> list[tuple[str, str]]:
    for a in (i, j):
        if a not in m.agents:
            raise UpdateError(E_UNKNOWN_REF, f"unknown agent {a!r}")
    if mode is UpdateMode.TARGETED:
        return [(i, j)]
    return [(i, l) for l in m.agents]


def _content_atoms(m: Model, content: Formula) -> frozenset[str]:
    atoms = atoms_of(content)
    unknown = atoms - set(m.props)
    if unknown:
        raise UpdateError(E_UNKNOWN_REF, f"update mentions undeclared props {sorted(unknown)}")
    return atoms


def update_plus(m: Model, i: str, j: str, content: Formula, mode: UpdateMode = UpdateMode.TARGETED) -> Model:
    """M[+content]^i_j: add At(content) to the targeted awareness sets."""
    atoms = _content_atoms(m, content)
    targets = _targets(m, i, j, mode)
    if mode is UpdateMode.TARGETED and i != j:
        outside = atoms - m.awareness[(i, i)]
        if outside:
            p = sorted(outside)[0]
            raise UpdateError(
                E_NOT_SUBSET, f"[+]^{i}_{j} would put {p} in A^{i}_{j} but {i} is unaware of it", p
            )
    aw = dict(m.awareness)
    for pair in targets:
        aw[pair] = aw[pair] | atoms
    if aw == m.awareness:
        return m
    return m.with_awareness(aw)


def update_minus(m: Model, i: str, j: str, content: Formula, mode: UpdateMode = UpdateMode.TARGETED) -> Model:
    """M[-content]^i_j: remove At(content) from the targeted awareness sets."""
    atoms = _content_atoms(m, content)
    targets = _targets(m, i, j, mode)
    aw = dict(m.awareness)
    for pair in targets:
        aw[pair] = aw[pair] - atoms
        if not aw[pair]:
            k, l = pair
            raise UpdateError(E_EMPTY_AWARENESS, f"[-]^{i}_{j} would leave A^{k}_{l} empty", pair)
    if mode is UpdateMode.TARGETED and i == j:
        for l in m.agents:
            outside = aw[(i, l)] - aw[(i, i)]
            if outside:
                p = sorted(outside)[0]
                raise UpdateError(
                    E_NOT_SUBSET, f"[-]^{i}_{i} would leave {p} in A^{i}_{l} but not in A^{i}_{i}", p
                )
    if aw == m.awareness:
        return m
    return m.with_awareness(aw)
