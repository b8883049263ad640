#!/usr/bin/env python3
"""The 31-adic endomorphism-ring valuation of a 159-bit curve.

The 31-volcano has height 15 but the pairing form is identically trivial
over F_p at the curve's level, so a few parallel non-backtracking walks run
downward until some profile wakes up with k = 0; that happens at the second
stability level, which pins the depth without ever touching the floor,
eight levels further down.
"""

import random
import time

from ellvolcano import curve_from_j, endo_valuation, make_field

p = 555574087029024034910907703752286309950415657009
j0 = 71892495629450480796525055574120577929291359932
rng = random.Random(2)

ctx = make_field(p)
E = curve_from_j(ctx, j0, -59045760, rng)
print(f"discriminant of Frobenius: {E.disc.d_pi}")
print(f"31-volcano height: {E.disc.height(31)}\n")

t0 = time.perf_counter()
rep = endo_valuation(E, 31, rng=rng)
dt = time.perf_counter() - t0

print("walk (j, k) records:")
for j, k in rep.path:
    print(f"  k = {k:>2}   j = {j}")
print(f"\ndepth below crater (= v_31 of the conductor of End(E)): {rep.level}")
print(f"v_31 of the index of Z[pi] in End(E): {rep.valuation}")
print(f"computed in {dt:.2f}s with no descent to the floor")
