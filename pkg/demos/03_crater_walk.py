#!/usr/bin/env python3
"""A complete walk around a crater of 22 curves at ell = 100003.

From the crater curve the pairing form has two projective roots; each marks
a horizontal kernel.  One kernel is tried per step, switching to the other
when the step backtracks, and the walk closes when the starting j-invariant
reappears.  Takes a minute or two: every step is one or two degree-100003
kernel computations.
"""

import random
import time

from ellvolcano import crater_walk, curve_new, make_field

p = 619074283342666852501391
ell = 100003
rng = random.Random(3)

ctx = make_field(p)
# the crater curve two ascending steps above the floor example
E2 = curve_new(ctx, 21207599576300038652790, 471086215466928725193841, 2, rng)

t0 = time.perf_counter()
walk = crater_walk(E2, ell, rng,
                   on_vertex=lambda j: print("  ", j.encode(), flush=True))
print(f"\ncrater size: {len(walk)} (walked in "
      f"{time.perf_counter() - t0:.1f}s)")
