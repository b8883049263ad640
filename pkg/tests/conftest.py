"""Shared corpus builders and the acceptance summary hook."""

import random

import pytest

from ellvolcano.curve import Curve, cardinality_small, curve_new, curve_from_j
from ellvolcano.field import make_field
from ellvolcano.integers import is_prime, valuation

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, desc in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line("criterion %-3s %-4s  %s"
                                    % (num, status, desc))


def primes_in(lo, hi):
    n = max(lo, 2)
    while n < hi:
        if is_prime(n):
            yield n
        n += 1


def random_ordinary_curve(ctx, rng, tries=200):
    """A random valid curve over a small prime field, with its exact order."""
    q = ctx.q
    for _ in range(tries):
        a = rng.randrange(1, q)
        b = rng.randrange(1, q)
        probe = Curve(ctx, ctx.elem(a), ctx.elem(b), 0, None)
        if (4 * probe.A**3 + 27 * probe.B**2).is_zero():
            continue
        n = cardinality_small(probe)
        t = q + 1 - n
        if t == 0 or t % ctx.p == 0 or t * t >= 4 * q:
            continue
        try:
            return curve_new(ctx, a, b, t, rng), n
        except Exception:
            continue
    return None, None


def component_avoids_special_j(E, ell=None):
    """True when no curve on E's volcano has j in {0, 1728}.

    j = 0 and j = 1728 are exactly the curves with CM by the orders of
    discriminant -3 and -4, so they appear on a component precisely when
    d_K is one of those; everything else is clean at every level.
    """
    return E.disc.d_K not in (-3, -4)


def find_volcano_curves(ell, count, rng, q_lo=None, q_hi=10_000,
                        min_height=1, require_ell_part=True):
    """Random ordinary curves with q = 1 mod ell and an ell-volcano of
    height >= min_height, whose component avoids the special j-invariants;
    yields (curve, order) pairs."""
    out = []
    q_lo = q_lo or (4 * ell + 2)
    for q in primes_in(q_lo, q_hi):
        if q % ell != 1:
            continue
        ctx = make_field(q)
        for _ in range(12):
            E, n = random_ordinary_curve(ctx, rng)
            if E is None:
                continue
            if require_ell_part and n % ell:
                continue
            if E.disc.height(ell) < min_height:
                continue
            if not component_avoids_special_j(E, ell):
                continue
            out.append((E, n))
            if len(out) >= count:
                return out
            break
    return out


def curves_on_volcano(ctx, t, rng, want, tries=40000):
    """Distinct-j curves with the given trace, by random j search."""
    from ellvolcano.curve import j_invariant, random_point, scalar_mul
    from ellvolcano.curve import _make_disc
    seen = set()
    out = []
    n1, n2 = ctx.q + 1 - t, ctx.q + 1 + t
    for _ in range(tries):
        jenc = rng.randrange(2, ctx.q)
        j = ctx.decode(jenc)
        if jenc in seen or j == 1728:
            continue
        k = j / (1728 - j)
        probe = Curve(ctx, 3 * k, 2 * k, t, None)
        P = random_point(probe, rng)
        if scalar_mul(probe, n1, P) is not None and \
           scalar_mul(probe, n2, P) is not None:
            continue
        try:
            E = curve_from_j(ctx, jenc, t, rng)
        except Exception:
            continue
        seen.add(jenc)
        out.append(E)
        if len(out) >= want:
            break
    return out


def targeted_volcano_curves(ell, count, rng, q_lo=None, q_hi=10_000,
                            min_height=1, per_volcano=2,
                            require_base_torsion=True):
    """Curves on ell-volcanoes of prescribed minimal height.

    Traces with ell^(2 min_height) | t^2 - 4q are produced directly by a
    Hensel-lifted square root of 4q, so tall volcanoes are found without
    rejection sampling.  Components carrying j in {0, 1728} are excluded.
    """
    from ellvolcano.integers import sqrt_mod_prime_power
    import math
    out = []
    q_lo = q_lo or (4 * ell + 2)
    mod = ell ** (2 * min_height)
    for q in primes_in(q_lo, q_hi):
        if q % ell != 1:
            continue
        s0 = sqrt_mod_prime_power(4 * q, ell, 2 * min_height)
        if s0 is None:
            continue
        ctx = make_field(q)
        hasse = math.isqrt(4 * q)
        cands = set()
        for sign in (s0, mod - s0):
            t = sign if sign <= mod // 2 else sign - mod
            k = 0
            while abs(t + k * mod) <= hasse or abs(t - k * mod) <= hasse:
                for cand in (t + k * mod, t - k * mod):
                    if 0 < abs(cand) <= hasse and cand % q:
                        cands.add(cand)
                k += 1
        for t in sorted(cands, key=abs):
            if require_base_torsion and (q + 1 - t) % ell:
                continue
            d_pi = t * t - 4 * q
            if d_pi >= 0 or valuation(d_pi, ell) < 2 * min_height:
                continue
            for E in curves_on_volcano(ctx, t, rng, per_volcano, tries=4000):
                if not component_avoids_special_j(E, ell):
                    continue
                out.append(E)
                if len(out) >= count:
                    return out
            break  # one trace per prime keeps the corpus spread out
    return out


def off_floor(E, ell, rng):
    """Ascend from the floor until the Sylow group has rank two."""
    from ellvolcano.volcano import find_directions, step, sylow_structure
    for _ in range(2 * E.disc.height(ell) + 2):
        s = sylow_structure(E, ell, rng)
        if s.n2 >= 1:
            return E, s
        rep = find_directions(E, s, ell, rng)
        E = step(E, rep.up_or_horizontal[0], ell)
    raise RuntimeError("could not leave the floor")


@pytest.fixture(scope="session")
def session_rng():
    return random.Random(0xF00D)
