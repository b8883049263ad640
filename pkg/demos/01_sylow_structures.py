#!/usr/bin/env python3
"""Sylow structures along a descending isogeny chain.

The running example is a height-2 volcano at ell = 100003 over an 80-bit
prime field where all the torsion lives in the base field.  Starting from a
floor curve, the unique rational kernel ascends; two steps later the walk
stands on the crater and the group shape has moved from Z/ell^4 through
Z/ell^3 x Z/ell to the balanced Z/ell^2 x Z/ell^2, one column per level.
"""

import random

from ellvolcano import curve_new, make_field, scalar_mul, step, sylow_structure
from ellvolcano.curve import j_invariant

p = 619074283342666852501391
ell = 100003
rng = random.Random(1)

ctx = make_field(p)
E = curve_new(ctx, 198950713578094615678321, 32044133215969807107747, 2, rng)

print(f"base field F_p with p = {p}")
print(f"ell = {ell}, volcano height = {E.disc.height(ell)}\n")

cur = E
for level in range(3):
    s = sylow_structure(cur, ell, rng)
    shape = (f"Z/{ell}^{s.n1}" if s.n2 == 0
             else f"Z/{ell}^{s.n1} x Z/{ell}^{s.n2}")
    print(f"curve {level}: j = {j_invariant(cur).encode()}")
    print(f"  ell-Sylow subgroup: {shape}")
    if s.n2 == s.n1:
        print("  balanced shape: this curve sits on the crater\n")
        break
    # the kernel <ell^(n1-1) P1> spans the unique ascending direction here
    K = scalar_mul(cur, ell ** (s.n1 - 1), s.P1)
    cur = step(cur, K, ell)
    print("  stepping along the ascending kernel...\n")
