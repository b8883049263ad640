#!/usr/bin/env python3
"""Generate classical modular polynomial data files from j-function q-expansions.

Exact integer arithmetic throughout.  For prime level L the polynomial is
assembled as (X - j(q^L)) * prod_k (X - j((tau+k)/L)); the Galois-stable
power sums of the L conjugate roots are integer q-series obtained by picking
every L-th coefficient of j^m, so no cyclotomic arithmetic is ever needed.
Coefficient series are then rewritten as integer polynomials in j by pole
subtraction, with a positive-precision buffer acting as a checksum.

Validations: Phi(X,Y) symmetric, the level-2 polynomial matches the classical
constants, and the Kronecker congruence Phi_L = (X^L - Y)(X - Y^L) mod L.

Usage: python tools/gen_modpoly.py [levels...]   (default: 2 3 5 7 11 13 31)
Writes src/ellvolcano/data/phi<L>.txt.
"""

import sys
from pathlib import Path

try:
    from gmpy2 import mpz
except ImportError:
    def mpz(x):
        return x


def _sigma3_series(n):
    sig = [0] * (n + 1)
    for d in range(1, n + 1):
        d3 = d * d * d
        for m in range(d, n + 1, d):
            sig[m] += d3
    return sig


def _pentagonal(n):
    """Coefficients of prod_{k>=1} (1 - q^k) up to q^n."""
    phi = [0] * (n + 1)
    phi[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        s = -1 if k % 2 else 1
        if g1 <= n:
            phi[g1] += s
        if g2 <= n:
            phi[g2] += s
        k += 1
    return phi


def _mul_trunc(a, b, n):
    """Truncated product of integer coefficient lists, Kronecker-packed."""
    la = min(len(a), n + 1)
    lb = min(len(b), n + 1)
    a = a[:la]
    b = b[:lb]
    neg = any(v < 0 for v in a) or any(v < 0 for v in b)
    if neg:
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                top = min(lb, n + 1 - i)
                for j in range(top):
                    out[i + j] += ai * b[j]
        return out
    bits_a = max(v.bit_length() for v in a) if a else 1
    bits_b = max(v.bit_length() for v in b) if b else 1
    slot_bits = bits_a + bits_b + max(la, lb).bit_length() + 1
    w = (slot_bits + 7) // 8
    pa = int.from_bytes(b"".join(v.to_bytes(w, "little") for v in a), "little")
    pb = int.from_bytes(b"".join(v.to_bytes(w, "little") for v in b), "little")
    prod = int(mpz(pa) * mpz(pb))
    raw = prod.to_bytes((la + lb) * w + 8, "little")
    return [int.from_bytes(raw[i * w:(i + 1) * w], "little")
            for i in range(min(la + lb - 1, n + 1))][:n + 1]


def _series_inverse(a, n):
    """Inverse of a unit power series (a[0] = 1) up to q^n."""
    inv = [1]
    prec = 1
    while prec <= n:
        prec = min(2 * prec, n + 1)
        t = _mul_trunc(a[:prec], inv, prec - 1)
        # inv <- inv * (2 - a * inv)
        corr = [-v for v in t]
        corr[0] += 2
        inv = _mul_trunc(inv, corr, prec - 1)
    return inv[:n + 1]


def j_series(n):
    """Coefficients c_0.. c_n with j(q) = q^-1 * sum c_i q^i (c_0 = 1)."""
    sig = _sigma3_series(n)
    e4 = [1] + [240 * sig[i] for i in range(1, n + 1)]
    e4_3 = _mul_trunc(_mul_trunc(e4, e4, n), e4, n)
    eta24 = _pow_trunc(_pentagonal(n), 24, n)
    return _mul_trunc(e4_3, _series_inverse(eta24, n), n)


def _pow_trunc(a, e, n):
    out = [1]
    base = a[:n + 1]
    while e:
        if e & 1:
            out = _mul_trunc(out, base, n)
        e >>= 1
        if e:
            base = _mul_trunc(base, base, n)
    return out


class Window:
    """Dense integer Laurent-series window [lo, hi]."""

    __slots__ = ("lo", "hi", "c")

    def __init__(self, lo, hi, coeffs=None):
        self.lo = lo
        self.hi = hi
        self.c = list(coeffs) if coeffs is not None else [0] * (hi - lo + 1)

    def __getitem__(self, e):
        if e < self.lo or e > self.hi:
            return 0
        return self.c[e - self.lo]

    def add_scaled(self, other, scale):
        for e in range(max(self.lo, other.lo), min(self.hi, other.hi) + 1):
            self.c[e - self.lo] += scale * other.c[e - other.lo]

    def mul(self, other, lo, hi):
        out = Window(lo, hi)
        for i in range(self.lo, self.hi + 1):
            ai = self.c[i - self.lo]
            if ai:
                jmin = max(other.lo, lo - i)
                jmax = min(other.hi, hi - i)
                for j in range(jmin, jmax + 1):
                    out.c[i + j - lo] += ai * other.c[j - other.lo]
        return out

    def scaled(self, k):
        return Window(self.lo, self.hi, [v * k for v in self.c])

    def is_zero(self):
        return not any(self.c)


def modular_polynomial(ell, buf=8):
    """Return {(i, k): coeff} with i >= k for the level-ell polynomial.

    Window sizing: every truncated product loses validity at the top equal
    to the other factor's pole depth, so the Newton chain (poles <= 1) costs
    ell terms and the final multiplication by j(q^ell) costs ell more; the
    extra 4 is slack, and the residue assertions below catch any shortfall.
    """
    kmax = buf + 2 * ell + 4
    n = ell * kmax + ell + 2
    jq = j_series(n)  # j = q^-1 * sum jq[i] q^i

    # full j^m series for m = 1..ell: Jm = q^-m * sum coeffs q^i
    powers = [None, jq]
    for m in range(2, ell + 2):
        powers.append(_mul_trunc(powers[-1], jq, n))

    lo, hi = -2, kmax
    # conjugate power sums: P_m = ell * sum_{ell | e} c^(m)_e q^(e/ell)
    psums = [None]
    for m in range(1, ell + 1):
        w = Window(lo, hi)
        for k in range(lo, hi + 1):
            e = ell * k  # exponent of q in j^m, valid when e >= -m
            idx = e + m
            if 0 <= idx <= n:
                w.c[k - lo] = ell * powers[m][idx]
        psums.append(w)

    # Newton's identities for the elementary symmetric functions
    es = [Window(lo, hi)]
    es[0].c[-lo] = 1  # e_0 = 1
    for i in range(1, ell + 1):
        acc = Window(lo, hi)
        sign = 1
        for m in range(1, i + 1):
            term = es[i - m].mul(psums[m], lo, hi)
            acc.add_scaled(term, sign)
            sign = -sign
        for idx, v in enumerate(acc.c):
            q, rem = divmod(v, i)
            assert rem == 0, "Newton identity division failed"
            acc.c[idx] = q
        es.append(acc)

    # G(X) = sum_i (-1)^(ell-i) e_{ell-i} X^i
    gcoef = [es[ell - i].scaled((-1) ** (ell - i)) for i in range(ell + 1)]

    # j(q^ell) on a window wide enough for products with g_i
    slo, shi = -(ell + 2), buf
    jl = Window(slo - lo, shi - lo)  # extra margin covers g's pole depth
    for e in range(jl.lo, jl.hi + 1):
        if e % ell == 0:
            idx = e // ell + 1
            if 0 <= idx <= n:
                jl.c[e - jl.lo] = jq[idx]

    # Phi coefficients: s_i = g_{i-1} - j(q^ell) * g_i
    scoef = []
    for i in range(ell + 2):
        s = Window(slo, shi)
        if 1 <= i <= ell + 1:
            s.add_scaled(gcoef[i - 1], 1)
        if i <= ell:
            s.add_scaled(jl.mul(gcoef[i], slo, shi), -1)
        scoef.append(s)

    # windows of j^d for the pole-subtraction rewrite
    jpow_win = [Window(slo, shi)]
    jpow_win[0].c[-slo] = 1
    for d in range(1, ell + 2):
        w = Window(slo, shi)
        for e in range(slo, shi + 1):
            idx = e + d
            if 0 <= idx <= n:
                w.c[e - slo] = powers[d][idx]
        jpow_win.append(w)

    terms = {}
    for i, s in enumerate(scoef):
        rem = Window(slo, shi, s.c)
        for d in range(ell + 1, 0, -1):
            cd = rem[-d]
            if cd:
                rem.add_scaled(jpow_win[d], -cd)
                terms[(i, d)] = cd
        c0 = rem[0]
        if c0:
            rem.add_scaled(jpow_win[0], -c0)
            terms[(i, 0)] = c0
        assert rem.is_zero(), "series residue nonzero at X^%d" % i

    # fold to i >= k using symmetry as a consistency check
    out = {}
    for (i, k), c in terms.items():
        if i < k:
            continue
        if i != k:
            assert terms.get((k, i)) == c, "asymmetry at %s" % ((i, k),)
        out[(i, k)] = c
    for (i, k), c in terms.items():
        if i < k:
            assert out.get((k, i)) == c
    return out


def kronecker_check(ell, terms):
    """Phi_ell = (X^ell - Y)(X - Y^ell) mod ell.

    The expansion is X^(ell+1) - X^ell Y^ell - X Y + Y^(ell+1); in the folded
    i >= k representation the X^(ell+1) and Y^(ell+1) terms share the slot
    (ell+1, 0) with coefficient 1.
    """
    want = {(ell + 1, 0): 1, (ell, ell): -1, (1, 1): -1}
    for i in range(ell + 2):
        for k in range(i + 1):
            c = terms.get((i, k), 0) % ell
            w = want.get((i, k), 0) % ell
            assert c == w, ("Kronecker congruence fails at %s: %d != %d"
                            % ((i, k), c, w))


PHI2_CLASSICAL = {
    (3, 0): 1, (2, 2): -1, (2, 1): 1488, (2, 0): -162000,
    (1, 1): 40773375, (1, 0): 8748000000, (0, 0): -157464000000000,
}


def main(levels):
    data_dir = Path(__file__).resolve().parents[1] / "src" / "ellvolcano" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    for ell in levels:
        terms = modular_polynomial(ell)
        kronecker_check(ell, terms)
        if ell == 2:
            assert terms == PHI2_CLASSICAL, "level 2 mismatch with classics"
        path = data_dir / ("phi%d.txt" % ell)
        with open(path, "w", encoding="ascii") as fh:
            fh.write("ell %d\n" % ell)
            for (i, k) in sorted(terms):
                fh.write("%d %d %d\n" % (i, k, terms[(i, k)]))
        print("wrote %s (%d terms)" % (path, len(terms)))


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]] or [2, 3, 5, 7, 11, 13, 31]
    main(args)
