"""The convenience-store scenario: who knows what about whom.

Owner a runs a store and knows of a new procurement route n. Owner b does not
know n exists, and a has not realised that b is unaware of it.

Run: python demos/store_example.py
"""
from alp import explain, indist, parse, satisfies
from alp.fixtures import STORE_BATTERY, store, store_aware

m = store()
print("worlds:", ", ".join(m.worlds))
print("b's indistinguishability classes:", [sorted(b) for b in indist(m, "b", "b").blocks])
print("a's indistinguishability is the identity:", indist(m, "a", "a").is_identity())
print()

for text, expected in STORE_BATTERY:
    got = satisfies(m, "w1", parse(text))
    print(f"  w1 |= {text:28} {got}")

# The --explain view shows which worlds each K operator had to look at.
verdict, trace = explain(m, "w1", parse("K[b,b] K[b,a] p_b"))
print()
print("why K[b,b] K[b,a] p_b fails at w1:")
for entry in trace:
    print(f"  {entry.formula}: reachable from w1 = {sorted(entry.partition.block('w1'))}")

# When a does realise that b is unaware of n, the nested claim still fails at w1
# because a's own view separates every world.
print()
print("store-aware, K[a,a] K[a,b] ~K[a,a] p_b at w1:",
      satisfies(store_aware(), "w1", parse("K[a,a] K[a,b] ~K[a,a] p_b")))
