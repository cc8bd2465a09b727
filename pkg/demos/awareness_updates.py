"""Becoming aware: how the scope of an update changes what b knows.

Run: python demos/awareness_updates.py
"""
from alp import UpdateMode, parse, satisfies, update_plus
from alp.fixtures import store
from alp.syntax import Prop

m = store()
claim = parse("[+n][b,b] K[b,b] K[b,a] p_b")

for mode in UpdateMode:
    updated = update_plus(m, "b", "b", Prop("n"), mode)
    print(f"{mode.value:10} A^b_a = {sorted(updated.awareness[('b', 'a')])}")
    print(f"{'':10} b's view after the update: {[sorted(x) for x in updated.indist('b', 'a').blocks]}")
    print(f"{'':10} {claim} at w1: {satisfies(m, 'w1', claim, mode)}")

# Only A^b_b grows under the targeted update, so b still thinks a cannot tell the
# n-worlds apart, and the claim stays false. Updating b's whole viewpoint makes it true.
