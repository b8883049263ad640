#!/usr/bin/env python3
"""Classifying every ell-isogeny from one curve without taking a step.

A small height-1 volcano at ell = 5: the pairing triple of a Sylow basis is
raised to the ell-th power until trivial, the logs of the last nontrivial
triple give a quadratic form over F_ell, and its projective roots mark the
kernels of the non-descending isogenies.  The classical trial method
(descend from every neighbor and compare path lengths) confirms each label.
"""

import random

from ellvolcano import (bundled_modpoly, classify_all_directions, curve_new,
                        make_field, oracle_direction, sylow_structure)
from ellvolcano.curve import j_invariant
from ellvolcano.integers import legendre

rng = random.Random(7)
ell = 5

# a crater curve of a height-1 volcano over F_71 with 5 split in the
# maximal order, so the six 5-isogenies come as 2 horizontal + 4 descending
q = 71
ctx = make_field(q)
E = curve_new(ctx, 54, 39, -3, rng)
assert legendre(E.disc.d_K, ell) == 1

s = sylow_structure(E, ell, rng)
print(f"curve over F_{q}: j = {j_invariant(E).encode()}, #E = {E.order}, "
      f"height {E.disc.height(ell)}, d_K = {E.disc.d_K}")
print(f"ell-Sylow shape: ({s.n1}, {s.n2})\n")

mp = bundled_modpoly(ell, ctx)
labeled = classify_all_directions(E, s, ell, rng)
print(f"{len(labeled)} kernels classified by pairings; oracle cross-check:")
for K, label in labeled:
    want = oracle_direction(E, K, ell, mp, rng)
    mark = "ok" if want == label else "MISMATCH"
    print(f"  kernel x = {K[0].encode():>6}  pairing: {label:<10} "
          f"trial walk: {want:<10} {mark}")
