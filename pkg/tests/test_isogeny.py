import random

import pytest

from ellvolcano import curve as cv
from ellvolcano.errors import BadKernel, ParseError, WrongLevel
from ellvolcano.field import make_field
from ellvolcano.integers import valuation
from ellvolcano.isogeny import (bundled_levels, bundled_modpoly, load_modpoly,
                                neighbors, parse_modpoly, velu)

RNG = random.Random(0xBEEF)

PHI2_TEXT = """ell 2
3 0 1
2 2 -1
2 1 1488
2 0 -162000
1 1 40773375
1 0 8748000000
0 0 -157464000000000
"""


def build_with_ell_point(ell, q_lo=None):
    """A small curve together with a point of exact order ell."""
    from conftest import primes_in
    for q in primes_in(q_lo or 4 * ell + 2, 100000):
        if q % ell != 1:
            continue
        ctx = make_field(q)
        for a in range(1, 25):
            for b in range(1, 25):
                probe = cv.Curve(ctx, ctx.elem(a), ctx.elem(b), 0, None)
                if (4 * probe.A**3 + 27 * probe.B**2).is_zero():
                    continue
                n = cv.cardinality_small(probe)
                t = q + 1 - n
                if n % ell or t == 0 or t % q == 0 or t * t >= 4 * q:
                    continue
                try:
                    E = cv.curve_new(ctx, a, b, t, RNG)
                except Exception:
                    continue
                cof = n // ell**valuation(n, ell)
                for _ in range(60):
                    P = cv.scalar_mul(E, cof, cv.random_point(E, RNG))
                    if P is None:
                        continue
                    k = cv.point_order_ell_power(E, P, ell)
                    K = cv.scalar_mul(E, ell ** (k - 1), P)
                    return E, n, K
    raise RuntimeError("no curve found for ell=%d" % ell)


class TestVelu:
    def test_kernel_annihilation_and_homomorphism(self):
        E, n, K = build_with_ell_point(5)
        iso = velu(E, K, 5)
        assert iso(K) is None
        assert iso(cv.scalar_mul(E, 2, K)) is None
        for _ in range(100):
            P = cv.random_point(E, RNG)
            Q = cv.random_point(E, RNG)
            lhs = iso(cv.add(E, P, Q))
            rhs = cv.add(iso.codomain, iso(P), iso(Q))
            assert lhs == rhs

    def test_codomain_order_preserved(self):
        E, n, K = build_with_ell_point(7)
        iso = velu(E, K, 7)
        assert iso.codomain.t == E.t
        for _ in range(8):
            P = cv.random_point(iso.codomain, RNG)
            assert cv.scalar_mul(iso.codomain, n, P) is None

    def test_dual_composition_is_multiplication_by_ell(self):
        # needs rank-two ell-torsion so a point outside the kernel exists
        ell = 3
        from conftest import find_volcano_curves, off_floor
        from ellvolcano.volcano import all_order_ell_kernels
        E, n = find_volcano_curves(ell, 1, random.Random(8), q_hi=4000)[0]
        E, s = off_floor(E, ell, RNG)
        K, T = all_order_ell_kernels(E, s, ell)[:2]
        iso = velu(E, K, ell)
        assert iso(T) is not None
        dual = velu(iso.codomain, iso(T), ell)
        # normalized isogenies compose to [ell] followed by the scaling
        # (x, y) -> (ell^2 x, ell^3 y), since [ell] multiplies the invariant
        # differential by ell while each normalized step preserves it
        assert dual.codomain.A == ell**4 * E.A
        assert dual.codomain.B == ell**6 * E.B
        for _ in range(20):
            P = cv.random_point(E, RNG)
            image = dual(iso(P))
            expect = cv.scalar_mul(E, ell, P)
            if expect is None:
                assert image is None
            else:
                assert image[0] == ell**2 * expect[0]
                assert image[1] in (ell**3 * expect[1], -(ell**3) * expect[1])

    def test_two_isogeny(self):
        # find a curve with a rational 2-torsion point
        from conftest import primes_in
        for q in primes_in(50, 500):
            ctx = make_field(q)
            done = False
            for a in range(1, 15):
                for b in range(1, 15):
                    probe = cv.Curve(ctx, ctx.elem(a), ctx.elem(b), 0, None)
                    if (4 * probe.A**3 + 27 * probe.B**2).is_zero():
                        continue
                    n = cv.cardinality_small(probe)
                    t = q + 1 - n
                    if n % 2 or t == 0 or t % q == 0 or t * t >= 4 * q:
                        continue
                    root = next((x for x in range(q)
                                 if (x**3 + a * x + b) % q == 0), None)
                    if root is None:
                        continue
                    E = cv.curve_new(ctx, a, b, t, RNG)
                    K = (ctx.elem(root), ctx.zero())
                    iso = velu(E, K, 2)
                    assert iso(K) is None
                    P = cv.random_point(E, RNG)
                    Q = cv.random_point(E, RNG)
                    assert iso(cv.add(E, P, Q)) == \
                        cv.add(iso.codomain, iso(P), iso(Q))
                    assert cv.scalar_mul(iso.codomain, n,
                                         cv.random_point(iso.codomain, RNG)) \
                        is None
                    done = True
                    break
                if done:
                    break
            if done:
                return
        raise RuntimeError("no 2-isogeny instance found")

    def test_bad_kernels(self):
        E, n, K = build_with_ell_point(5)
        with pytest.raises(BadKernel):
            velu(E, None, 5)
        with pytest.raises(BadKernel):
            velu(E, K, 7)  # wrong order
        bad = cv.random_point(E, RNG)
        if cv.scalar_mul(E, 5, bad) is not None:
            with pytest.raises(BadKernel):
                velu(E, bad, 5)

    def test_agreement_with_modular_polynomial(self):
        for ell in (2, 3, 5, 7, 11, 13):
            if ell == 2:
                continue  # covered by test_two_isogeny + neighbor test below
            E, n, K = build_with_ell_point(ell)
            iso = velu(E, K, ell)
            mp = bundled_modpoly(ell, E.ctx)
            j2 = cv.j_invariant(iso.codomain)
            assert j2 in neighbors(cv.j_invariant(E), mp)


class TestModPoly:
    def test_classical_level_two_constants(self):
        ctx = make_field(1000003)
        mp = parse_modpoly(PHI2_TEXT, 2, ctx)
        bundled = bundled_modpoly(2, ctx)
        assert mp.terms == bundled.terms

    def test_symmetry(self):
        ctx = make_field(101)
        rng = random.Random(1)
        for ell in bundled_levels():
            mp = bundled_modpoly(ell, ctx)
            for _ in range(10):
                x = ctx.random_element(rng)
                y = ctx.random_element(rng)
                assert mp(x, y) == mp(y, x)

    def test_missing_file(self):
        with pytest.raises(ParseError):
            load_modpoly("/nonexistent/phi2.txt", 2, make_field(101))

    def test_wrong_level(self):
        ctx = make_field(101)
        with pytest.raises(WrongLevel):
            parse_modpoly(PHI2_TEXT, 3, ctx)

    def test_malformed(self):
        ctx = make_field(101)
        with pytest.raises(ParseError):
            parse_modpoly("garbage\n", 2, ctx)
        with pytest.raises(ParseError):
            parse_modpoly("ell 2\n1 2\n", 2, ctx)

    def test_roundtrip_format(self, tmp_path):
        ctx = make_field(10007)
        src = bundled_modpoly(3, ctx)
        path = tmp_path / "phi3.txt"
        with open(path, "w") as fh:
            fh.write("ell 3\n")
            for i, k, c in src.terms:
                fh.write("%d %d %d\n" % (i, k, c))
        again = load_modpoly(str(path), 3, ctx)
        assert again.terms == src.terms


class TestNeighbors:
    def test_floor_curve_has_one(self):
        # a floor vertex of a positive-height volcano has a single neighbor
        from conftest import find_volcano_curves
        from ellvolcano.volcano import sylow_structure
        curves = find_volcano_curves(3, 4, random.Random(3), q_hi=4000)
        found = 0
        for E, n in curves:
            s = sylow_structure(E, 3, RNG)
            if s.n2 != 0:
                continue
            mp = bundled_modpoly(3, E.ctx)
            nb = neighbors(cv.j_invariant(E), mp)
            assert len(nb) == 1
            found += 1
        assert found >= 1

    def test_trivial_volcano_zero_roots(self):
        # hunt a curve whose ell-volcano is an isolated vertex: ell inert
        # and no ell-isogenies at all (0 roots)
        from conftest import primes_in, random_ordinary_curve
        for q in primes_in(20, 2000):
            ctx = make_field(q)
            E, n = random_ordinary_curve(ctx, random.Random(q))
            if E is None:
                continue
            for ell in (3, 5):
                if E.disc.height(ell) or E.disc.d_pi % ell == 0:
                    continue
                from ellvolcano.integers import legendre
                if legendre(E.disc.d_K, ell) != -1:
                    continue
                mp = bundled_modpoly(ell, ctx)
                assert neighbors(cv.j_invariant(E), mp) == []
                return
        raise RuntimeError("no inert instance found")

    def test_split_height_zero_has_two(self):
        from conftest import primes_in, random_ordinary_curve
        from ellvolcano.integers import legendre
        for q in primes_in(20, 2000):
            ctx = make_field(q)
            E, n = random_ordinary_curve(ctx, random.Random(q + 1))
            if E is None:
                continue
            for ell in (3, 5):
                if E.disc.height(ell) or E.disc.d_pi % ell == 0:
                    continue
                if legendre(E.disc.d_K, ell) != 1:
                    continue
                mp = bundled_modpoly(ell, ctx)
                assert len(neighbors(cv.j_invariant(E), mp)) == 2
                return
        raise RuntimeError("no split instance found")
