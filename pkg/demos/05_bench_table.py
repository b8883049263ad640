#!/usr/bin/env python3
"""Operation counts: pairing-guided ascent versus the classical walks.

Each row searches a volcano family with the requested (ell, height, torsion
degree), normalizes to one level below the crater, and measures the field
multiplications spent finding and taking the ascending step by both
methods.  The classical column walks all neighbor paths in parallel over
modular-polynomial roots; the pairing column runs the full Sylow-basis and
profile pipeline plus one kernel computation.  Expect a few minutes, spent
mostly searching for instances.
"""

from ellvolcano.bench import DEFAULT_GRID, render_table, run_bench

rows = run_bench(DEFAULT_GRID, seed=0)
print(render_table(rows))
print("\nratio = classical multiplications / pairing multiplications")
print("(the pairing column is scaled to base-field units when the torsion"
      " lives in an extension)")
