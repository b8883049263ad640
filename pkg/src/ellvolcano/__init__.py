"""Navigation of ell-isogeny volcanoes of ordinary elliptic curves.

The library computes ell-Sylow structures of curves over finite fields,
classifies ell-isogenies as ascending, descending or horizontal from a
handful of reduced Tate pairings, walks crater cycles, and reads off the
ell-adic valuation of the endomorphism-ring conductor without the classical
trial descents.
"""

from .curve import (Curve, DiscriminantData, add, base_change,
                    cardinality_small, curve_from_j, curve_new, dbl, ec_dlog,
                    is_on_curve, j_invariant, neg, point_order_ell_power,
                    quadratic_twist, random_point, scalar_mul,
                    short_weierstrass_from_general, sub,
                    torsion_extension_degree, trace_power)
from .errors import VolcanoError
from .field import (FieldCtx, FieldElem, dlog_prime_power, make_field,
                    mult_order, primitive_root_of_unity)
from .isogeny import (Isogeny, ModPoly, bundled_levels, bundled_modpoly,
                      load_modpoly, neighbors, parse_modpoly, velu)
from .pairing import (PairingProfile, conic_roots_mod_ell, miller,
                      pairing_profile, tate_reduced, weil_pairing)
from .poly import Poly, poly_roots
from .volcano import (DirectionReport, EndoReport, StepOutcome,
                      SylowStructure, all_order_ell_kernels, ascend_to_crater,
                      classical_step, classify_all_directions, crater_walk,
                      descend_depth, endo_valuation, find_directions,
                      level_invariant, oracle_direction, prepare, step,
                      sylow_structure)

__version__ = "0.1.0"
