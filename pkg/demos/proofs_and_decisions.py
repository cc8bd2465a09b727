"""Checking a Hilbert-style derivation, then deciding validity semantically.

Run: python demos/proofs_and_decisions.py
"""
from alp import check_proof, derive_factivity, parse, satisfiable, valid
from alp.syntax import Prop

script = derive_factivity("a", "b", Prop("p"))
print(script)
print("verdict:", check_proof(script))
print()

for text in [
    "K[a,b] p -> p",
    "~K[a,a] p -> K[a,a] ~K[a,a] p",
    "~K[a,a] p & A[a,a] ~K[a,a] p -> K[a,a] ~K[a,a] p",
    "E[a,a] p -> E[a,b] p",
]:
    print(f"{text:50} valid: {valid(parse(text))}")

# A negative answer comes with a concrete counterexample model.
res = satisfiable(parse("~(~K[a,a] p -> K[a,a] ~K[a,a] p)"))
print()
print(f"counterexample: {len(res.witness.worlds)} worlds, evaluated at {res.world}")
for w in res.witness.worlds:
    print(f"  {w}: {sorted(p for p in res.witness.truth[w] if not p.startswith('_'))}")
print("  A^a_a =", sorted(res.witness.awareness[("a", "a")]))
