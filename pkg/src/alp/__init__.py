"""Awareness logic with partitions: formulas, models, model checking, awareness
updates, a Hilbert-style proof checker and a desk-scale decision procedure."""
from .checker import explain, extension, satisfies, valid_in_model
from .decide import BudgetExceeded, SatResult, bounded_search, build_atoms, satisfiable, valid
from .dynamics import UpdateMode, update_minus, update_plus
from .model import Model, ModelError, Partition, composed_closure, indist, load_model, validate
from .proofs import ProofScript, Verdict, check_proof, derive_factivity, match_axiom, parse_script
from .syntax import Formula, FormulaSyntaxError, atoms_of, closure, parse, render, subformulas

__all__ = [
    "BudgetExceeded", "Formula", "FormulaSyntaxError", "Model", "ModelError", "Partition", "ProofScript",
    "SatResult", "UpdateMode", "satisfies", "Verdict", "atoms_of", "bounded_search", "build_atoms", "check_proof",
    "closure", "composed_closure", "derive_factivity", "explain", "extension", "indist", "load_model",
    "match_axiom", "parse", "parse_script", "render", "satisfiable", "subformulas", "update_minus",
    "update_plus", "valid", "valid_in_model", "validate",
]
