"""Volcano navigation: Sylow structure, pairing-guided directions, crater
walks, level invariants and endomorphism-ring valuations.

The central objects are the ell-Sylow basis of E(F_q) and the pairing
profile of that basis.  Profile roots mark the kernels of ascending or
horizontal isogenies, every other order-ell subgroup descends, and the
number of power-up iterations of the pairing triple pins the level of the
curve between the two stability levels.  Above the second stability level
the profile carries no information and navigation falls back to parallel
non-backtracking walks, stopping as soon as the profile wakes up instead of
descending all the way to the floor.
"""

import random

from .curve import (add, base_change, curve_from_j, j_invariant, neg,
                    point_order_ell_power, quadratic_twist, random_point,
                    scalar_mul, sub, ec_dlog)
from .errors import (AboveSecondStability, BadInput, Degenerate, FloorCurve,
                     NeedTwist, NeedExtension, NotInSubgroup, NotOnCrater,
                     RampartSingleton, RandomnessExhausted, ResourceError,
                     TrivialVolcano)
from .integers import valuation
from .isogeny import neighbors, velu
from .pairing import pairing_profile, weil_pairing

_SYLOW_RETRIES = 256


class SylowStructure:
    """E[ell^inf](F_q) = Z/ell^n1 x Z/ell^n2 with generators (P1, P2).

    P2 is None when n2 = 0 (cyclic Sylow group, the floor case).  N_cof is
    the prime-to-ell cofactor of the group order.
    """

    __slots__ = ("ell", "n1", "n2", "P1", "P2", "N_cof")

    def __init__(self, ell, n1, n2, P1, P2, N_cof):
        self.ell = ell
        self.n1 = n1
        self.n2 = n2
        self.P1 = P1
        self.P2 = P2
        self.N_cof = N_cof

    @property
    def cyclic(self):
        return self.n2 == 0

    def to_json(self):
        return {"n1": self.n1, "n2": self.n2,
                "P1": _point_json(self.P1), "P2": _point_json(self.P2)}

    def __repr__(self):
        return "SylowStructure(ell=%d, n1=%d, n2=%d)" % (
            self.ell, self.n1, self.n2)


def _point_json(P):
    return None if P is None else [P[0].encode(), P[1].encode()]


def sylow_structure(E, ell, rng=None):
    """Generators and shape of the ell-Sylow subgroup of E(F_q).

    Cofactor-multiplied random points give a maximal-order P1; a second
    point has its <P1>-component removed with a point discrete log and is
    accepted once the Weil pairing certifies independence.  Expects
    q = 1 mod ell (else NeedExtension) and ell | #E (else NeedTwist or
    Degenerate), mirroring how the group-structure routine is meant to be
    driven after choosing the right base field and twist.
    """
    rng = rng or random.Random(0x51109)
    ctx = E.ctx
    if ell != 2 and ctx.q % ell != 1:
        raise NeedExtension("q is not 1 mod ell; base-change first")
    order = E.order
    if order % ell:
        if (ctx.q + 1 + E.t) % ell == 0:
            raise NeedTwist("ell divides the twist's order, not this one")
        raise Degenerate("ell does not divide the group order")
    n = valuation(order, ell)
    cof = order // ell**n
    for _ in range(_SYLOW_RETRIES):
        P1 = scalar_mul(E, cof, random_point(E, rng))
        n1 = point_order_ell_power(E, P1, ell)
        if n1 == n:
            return SylowStructure(ell, n, 0, P1, None, cof)
        n2 = n - n1
        if n1 < n2:
            continue
        P2 = scalar_mul(E, cof, random_point(E, rng))
        base = scalar_mul(E, ell**n2, P1)
        target = scalar_mul(E, ell**n2, P2)
        if n1 == n2:
            if target is not None:
                continue  # P1 undersampled; a larger order exists
            alpha = 0
        else:
            try:
                alpha = ec_dlog(E, base, target, ell, n1 - n2)
            except NotInSubgroup:
                continue
        P2 = sub(E, P2, scalar_mul(E, alpha, P1))
        if point_order_ell_power(E, P2, ell) != n2:
            continue
        w = weil_pairing(E, scalar_mul(E, ell ** (n1 - 1), P1),
                         scalar_mul(E, ell ** (n2 - 1), P2), ell, rng)
        if w == ctx.one():
            continue
        return SylowStructure(ell, n1, n2, P1, P2, cof)
    raise RandomnessExhausted("Sylow basis not found after %d draws"
                             % _SYLOW_RETRIES)


def prepare(E, ell, rng=None):
    """Move E to the smallest field (and twist) with rational ell-torsion.

    Returns (E_work, structure, extension_degree, twisted).  The returned
    curve lives on a volcano with the same heights and depths as E's, since
    the extension degree is prime to ell and twisting preserves j.
    """
    from .curve import torsion_extension_degree
    rng = rng or random.Random(0x93E9A9E)
    if (ell == 2 or E.ctx.q % ell == 1) and E.order % ell == 0:
        return E, sylow_structure(E, ell, rng), 1, False
    if ell == 2:
        raise Degenerate("no rational 2-torsion for this trace")
    r, twisted = torsion_extension_degree(E, ell)
    Ew = base_change(E, r)
    if twisted:
        Ew = quadratic_twist(Ew)
    return Ew, sylow_structure(Ew, ell, rng), r, twisted


class DirectionReport:
    """Classified order-ell kernels of a curve with known Sylow basis."""

    __slots__ = ("profile", "on_floor", "level_invariant", "up_or_horizontal",
                 "descending_sample", "above_second_stability")

    def __init__(self, profile, on_floor, level_invariant, up_or_horizontal,
                 descending_sample, above_second_stability=False):
        self.profile = profile
        self.on_floor = on_floor
        self.level_invariant = level_invariant
        self.up_or_horizontal = up_or_horizontal
        self.descending_sample = descending_sample
        self.above_second_stability = above_second_stability

    def to_json(self):
        return {
            "level_invariant": self.level_invariant,
            "roots": ([list(r) for r in self.profile.roots]
                      if self.profile else []),
            "kernels": [_point_json(K) for K in self.up_or_horizontal],
            "on_floor": self.on_floor,
            "above_second_stability": self.above_second_stability,
        }


def find_directions(E, s, ell, rng=None):
    """Kernels of the ascending/horizontal isogenies from E.

    On the floor the answer is immediate: the single rational kernel is
    ell^(n-1) P1 and it ascends.  Otherwise the profile roots (x : y) map to
    kernels <ell^(n2-1) (x Q1 + y P2)> and every other subgroup descends.
    Raises AboveSecondStability when the pairing triple is trivial, in which
    case nothing can be classified over this field.
    """
    rng = rng or random.Random(0xD19EC7)
    if s.cyclic:
        K = scalar_mul(E, ell ** (s.n1 - 1), s.P1)
        return DirectionReport(None, True, s.n1, [K], None)
    prof = pairing_profile(E, s.P1, s.P2, s.n1, s.n2, ell, rng)
    if prof.degenerate:
        raise AboveSecondStability(
            "pairing triple is trivial; no direction information here")
    Q1 = scalar_mul(E, ell ** (s.n1 - s.n2), s.P1)
    mult = ell ** (s.n2 - 1)
    kernels = []
    for x, y in prof.roots:
        K = scalar_mul(E, mult,
                       add(E, scalar_mul(E, x, Q1), scalar_mul(E, y, s.P2)))
        if K is None or scalar_mul(E, ell, K) is not None:
            raise RandomnessExhausted("root kernel has wrong order; "
                                      "inconsistent Sylow basis")
        kernels.append(K)
    desc = None
    for x, y in ((1, 0), (0, 1), (1, 1), (2, 1)):
        if ell == 2 and x == 2:
            continue
        if (x % ell, y) in prof.roots:
            continue
        desc = scalar_mul(E, mult,
                          add(E, scalar_mul(E, x, Q1),
                              scalar_mul(E, y, s.P2)))
        break
    level = s.n1 if s.n1 > s.n2 else prof.count - 1
    return DirectionReport(prof, False, level, kernels, desc)


def step(E, kernel, ell):
    """Codomain of the isogeny with the given kernel; trace carries over."""
    return velu(E, kernel, ell).codomain


def all_order_ell_kernels(E, s, ell):
    """One generator per order-ell subgroup, from the Sylow basis."""
    if s.n2 == 0:
        return [scalar_mul(E, ell ** (s.n1 - 1), s.P1)]
    Q1 = scalar_mul(E, ell ** (s.n1 - s.n2), s.P1)
    mult = ell ** (s.n2 - 1)
    A = scalar_mul(E, mult, Q1)
    B = scalar_mul(E, mult, s.P2)
    out = [A]
    acc = None
    for y in range(ell):
        # A * y + B enumerated incrementally: kernels <y A + B>
        acc = B if acc is None else add(E, acc, A)
        out.append(acc)
    return out


class StepOutcome:
    """Result of one parallel-walk classical step from a j-invariant."""

    __slots__ = ("kind", "candidates")

    def __init__(self, kind, candidates):
        self.kind = kind  # "floor" | "floor-two" | "interior"
        self.candidates = candidates


def classical_step(j, prev_j, mp, rng=None, max_rounds=512):
    """Ascending/horizontal candidates from j by parallel descent.

    All neighbor paths are walked in lockstep without backtracking until one
    reaches the floor; the starting neighbors whose paths survive belong to
    the non-descending isogenies (at most two).  The degenerate cases come
    first: no neighbors at all is an isolated vertex (TrivialVolcano), one
    or two neighbors mean the curve is already a floor vertex or sits on a
    height-zero crater.
    """
    rng = rng or random.Random(0xA190)
    roots0 = neighbors(j, mp, rng)
    if not roots0:
        raise TrivialVolcano("isolated j-invariant: no ell-isogenies")
    if len(roots0) == 1:
        return StepOutcome("floor", roots0)
    if len(roots0) == 2:
        return StepOutcome("floor-two", roots0)
    starts = [r for r in roots0 if prev_j is None or r != prev_j]
    heads = list(starts)
    prevs = [j] * len(starts)
    alive = [True] * len(starts)
    for _ in range(max_rounds):
        done = False
        next_heads = list(heads)
        for i, head in enumerate(heads):
            if not alive[i]:
                continue
            rts = neighbors(head, mp, rng)
            if len(rts) <= 1:
                alive[i] = False
                done = True
                continue
            nxt = next(r for r in rts if r != prevs[i])
            prevs[i] = head
            next_heads[i] = nxt
        if done:
            survivors = [starts[i] for i in range(len(starts)) if alive[i]]
            return StepOutcome("interior", survivors)
        heads = next_heads
    raise ResourceError("parallel walk exceeded %d rounds" % max_rounds)


def descend_depth(j, mp, rng=None, max_rounds=512):
    """Height of j above the floor: length of the shortest descending path."""
    rng = rng or random.Random(0xDE57)
    roots0 = neighbors(j, mp, rng)
    if not roots0:
        raise TrivialVolcano("isolated j-invariant: no ell-isogenies")
    if len(roots0) <= 2:
        return 0
    heads = list(roots0)
    prevs = [j] * len(heads)
    length = 1
    for _ in range(max_rounds):
        next_heads = list(heads)
        for i, head in enumerate(heads):
            rts = neighbors(head, mp, rng)
            if len(rts) <= 1:
                return length
            nxt = next(r for r in rts if r != prevs[i])
            prevs[i] = head
            next_heads[i] = nxt
        heads = next_heads
        length += 1
    raise ResourceError("descent exceeded %d rounds" % max_rounds)


def oracle_direction(E, kernel, ell, mp, rng=None):
    """Trial-based direction of the isogeny with the given kernel.

    Builds the codomain and compares the heights of domain and codomain
    above the floor, exactly the classical walk-and-compare criterion; used
    as an independent check of the pairing-based classification.
    """
    rng = rng or random.Random(0x09AC1E)
    d0 = descend_depth(j_invariant(E), mp, rng)
    cod = step(E, kernel, ell)
    d1 = descend_depth(j_invariant(cod), mp, rng)
    if d1 == d0 - 1:
        return "descending"
    if d1 == d0 + 1:
        return "ascending"
    if d1 == d0:
        return "horizontal"
    raise BadInput("isogeny changed depth by %d" % (d1 - d0))


def classify_all_directions(E, s, ell, rng=None):
    """Map each order-ell kernel to its pairing-based direction label."""
    rng = rng or random.Random(0xCA55)
    report = find_directions(E, s, ell, rng)
    out = []
    if report.on_floor:
        return [(report.up_or_horizontal[0], "ascending")]
    up_set = {(K[0].c, K[1].c) for K in report.up_or_horizontal}
    up_subgroups = []
    for K in report.up_or_horizontal:
        mult = K
        members = set()
        for _ in range(ell - 1):
            members.add((mult[0].c, mult[1].c))
            mult = add(E, mult, K)
        up_subgroups.append(members)
    on_crater = _depth_from_profile(E, s, report, ell) == 0
    up_label = "horizontal" if on_crater else "ascending"
    for K in all_order_ell_kernels(E, s, ell):
        key = (K[0].c, K[1].c)
        if any(key in members for members in up_subgroups):
            out.append((K, up_label))
        else:
            out.append((K, "descending"))
    return out


def _depth_from_profile(E, s, report, ell):
    """Depth below the crater from structure, height and profile count.

    Unbalanced structure sits below the first stability level at depth
    h - n2; a balanced curve with a live profile sits k = count - 1 levels
    below the second stability level h + 1 - 2 n2, giving h - 2 n2 + count
    in both regimes (count = n2 marks the first stability level itself).
    """
    h = E.disc.height(ell)
    if s.n2 == 0:
        return h
    if s.n1 > s.n2:
        return h - s.n2
    return h - 2 * s.n2 + report.profile.count


def level_invariant(E, ell, rng=None):
    """The level invariant: n1 below the first stability level, else the
    number of pairing-triple power-ups minus one."""
    rng = rng or random.Random(0x1E4E1)
    Ew, s, _, _ = prepare(E, ell, rng)
    if s.cyclic or s.n1 > s.n2:
        return s.n1
    prof = pairing_profile(Ew, s.P1, s.P2, s.n1, s.n2, ell, rng)
    if prof.degenerate:
        raise AboveSecondStability("level invariant needs a nontrivial "
                                   "pairing triple over this field")
    return prof.count - 1


def crater_walk(E, ell, rng=None, max_len=100_000, on_vertex=None):
    """Distinct j-invariants around the crater cycle, starting at j(E).

    Each step takes one profile-root kernel; if the codomain backtracks to
    the previous vertex the other root is used instead (on average 1.5
    isogenies per step).  Craters of size one and two terminate through the
    same rule since the walk closes as soon as the start j reappears on a
    non-backtracking step.  on_vertex, when given, is called with each
    j-invariant as it is discovered.
    """
    rng = rng or random.Random(0xC4A7E4)
    cur = E
    s = sylow_structure(cur, ell, rng)
    report = find_directions(cur, s, ell, rng)
    if report.on_floor:
        raise NotOnCrater("floor curve; ascend before walking the crater")
    nroots = len(report.profile.roots)
    if nroots == 0:
        raise RampartSingleton("inert case: the crater is this single curve")
    if _depth_from_profile(cur, s, report, ell) != 0:
        raise NotOnCrater("curve lies %d level(s) below the crater"
                          % _depth_from_profile(cur, s, report, ell))
    js = [j_invariant(E)]
    if on_vertex is not None:
        on_vertex(js[0])
    prev_j = None
    while len(js) <= max_len:
        kernels = report.up_or_horizontal
        cod = step(cur, kernels[0], ell)
        jn = j_invariant(cod)
        if prev_j is not None and jn == prev_j:
            if len(kernels) == 1:
                return js  # two-cycle crater traversed by a ramified prime
            cod = step(cur, kernels[1], ell)
            jn = j_invariant(cod)
            if jn == prev_j:
                return js  # two-cycle crater, both horizontals return
        if jn == js[0]:
            return js
        js.append(jn)
        if on_vertex is not None:
            on_vertex(jn)
        prev_j = j_invariant(cur)
        cur = cod
        s = sylow_structure(cur, ell, rng)
        report = find_directions(cur, s, ell, rng)
        if len(report.profile.roots) != nroots:
            raise NotOnCrater("root count changed mid-walk; "
                              "the start curve was not on the crater")
    raise ResourceError("crater walk exceeded %d vertices" % max_len)


def ascend_to_crater(E, ell, rng=None):
    """Step upward until the profile says the curve sits on the crater."""
    rng = rng or random.Random(0xA5CE4D)
    cur = E
    for _ in range(4 * E.disc.height(ell) + 8):
        s = sylow_structure(cur, ell, rng)
        report = find_directions(cur, s, ell, rng)
        if report.on_floor:
            cur = step(cur, report.up_or_horizontal[0], ell)
            continue
        if _depth_from_profile(cur, s, report, ell) == 0:
            return cur
        cur = step(cur, report.up_or_horizontal[0], ell)
    raise ResourceError("failed to reach the crater")


class EndoReport:
    """ell-adic endomorphism-ring data for a curve.

    level is the depth of the curve below its crater, which equals the
    ell-adic valuation of the conductor of End(E); valuation is the
    ell-adic valuation of the index of Z[pi] inside End(E), i.e.
    height - level, the number the walk-to-the-floor classics output.
    path records the classical non-backtracking walk (j, k) pairs when one
    was needed to reach the second stability level.
    """

    __slots__ = ("ell", "height", "level", "path", "used_classical_walk")

    def __init__(self, ell, height, level, path, used_classical_walk):
        self.ell = ell
        self.height = height
        self.level = level
        self.path = path
        self.used_classical_walk = used_classical_walk

    @property
    def conductor_valuation(self):
        return self.level

    @property
    def valuation(self):
        return self.height - self.level

    def to_json(self):
        return {"ell": self.ell, "valuation": self.valuation,
                "height": self.height, "level": self.level,
                "conductor_valuation": self.conductor_valuation,
                "path": [{"j": j, "k": k} for j, k in self.path],
                "used_classical_walk": self.used_classical_walk}

    def __repr__(self):
        return ("EndoReport(ell=%d, height=%d, level=%d, valuation=%d)"
                % (self.ell, self.height, self.level, self.valuation))


def endo_valuation(E, ell, mp=None, rng=None):
    """ell-adic valuation data of End(E) without descending to the floor.

    When the pairing profile is alive the depth below the crater follows
    from the structure and the power-up count alone, with no isogeny steps.
    Above the second stability level a few parallel non-backtracking walks
    run until some path's profile wakes up with k = 0; the shortest such
    path is a straight descent, which pins the starting depth.  Steps use
    kernel isogenies over the working field, or the supplied modular
    polynomial when one is given.
    """
    rng = rng or random.Random(0xE2D0)
    if ell != 2 and E.t % ell == 0:
        raise BadInput("ell divides the trace; endomorphism order "
                       "bookkeeping is out of scope here")
    h = E.disc.height(ell)
    if h == 0:
        return EndoReport(ell, 0, 0, [], False)
    Ew, s, _, _ = prepare(E, ell, rng)
    if s.cyclic:
        return EndoReport(ell, h, h, [], False)
    if s.n1 > s.n2:
        return EndoReport(ell, h, h - s.n2, [], False)
    prof = pairing_profile(Ew, s.P1, s.P2, s.n1, s.n2, ell, rng)
    if not prof.degenerate:
        return EndoReport(ell, h, h - 2 * s.n2 + prof.count, [], False)
    # a trivial profile forces h + 1 - 2 n2 >= 1, so no clamping is needed
    ssl = h + 1 - 2 * s.n2
    steps, path = _walk_to_second_stability(Ew, s, ell, mp, rng)
    path = [(j_invariant(Ew).encode(), prof.count - 1)] + path
    return EndoReport(ell, h, ssl - steps, path, True)


def _walk_to_second_stability(Ew, s, ell, mp, rng):
    """Parallel random non-backtracking walks until a profile wakes up.

    Three distinct starting kernels guarantee at least one path begins with
    a descending step, and a non-backtracking path that ever descends keeps
    descending; the first path whose profile goes nontrivial therefore has
    length ssl - depth(E) and ends with k = 0.
    """
    kernels = all_order_ell_kernels(Ew, s, ell)
    n_paths = min(3, len(kernels))
    paths = []
    for K in kernels[:n_paths]:
        iso = velu(Ew, K, ell)
        # a point of order ell outside the kernel tracks the dual's kernel
        T = next(KK for KK in kernels if (KK[0].c, KK[1].c) != (K[0].c, K[1].c))
        paths.append({"cur": iso.codomain, "dual": iso(T), "trail": []})
    cap = 4 * Ew.disc.height(ell) + 8
    for _ in range(cap):
        for path in paths:
            cur = path["cur"]
            s2 = sylow_structure(cur, ell, rng)
            prof = pairing_profile(cur, s2.P1, s2.P2, s2.n1, s2.n2, ell, rng)
            path["trail"].append((j_invariant(cur).encode(), prof.count - 1))
            if not prof.degenerate:
                # any path that descended at every step arrives exactly at
                # the second stability level, where k = 0
                return len(path["trail"]), path["trail"]
            ks = all_order_ell_kernels(cur, s2, ell)
            rng.shuffle(ks)
            dual = path["dual"]
            nxt = next(K for K in ks
                       if weil_pairing(cur, K, dual, ell, rng) != cur.ctx.one())
            iso = velu(cur, nxt, ell)
            T = next(K for K in ks if (K[0].c, K[1].c) != (nxt[0].c, nxt[1].c))
            path["cur"] = iso.codomain
            path["dual"] = iso(T)
    raise ResourceError("no nontrivial profile within %d steps" % cap)
