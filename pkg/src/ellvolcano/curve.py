"""Short Weierstrass curves over a FieldCtx, with volcano bookkeeping.

Points are affine pairs (x, y) of FieldElem, with None for the point at
infinity.  Curves cache their Frobenius trace and the discriminant data
(d_pi = t^2 - 4q = g^2 * d_K) from which every ell-volcano height is read
off.  Scalar multiplication switches to Jacobian coordinates for large
scalars so cofactor multiplications in big extension fields do not pay an
inversion per group operation.
"""

import math
import random

from .errors import (BadInput, BadTrace, ContextMismatch, FieldTooLarge,
                     NoMatchingTwist, NotInSubgroup, SingularCurve,
                     SpecialJInvariant, Supersingular)
from .field import make_field
from .integers import fundamental_discriminant, valuation
from .poly import Poly, poly_roots


class DiscriminantData:
    """Frobenius discriminant split d_pi = g^2 * d_K."""

    __slots__ = ("d_pi", "d_K", "g")

    def __init__(self, d_pi):
        self.d_pi = d_pi
        self.d_K, self.g = fundamental_discriminant(d_pi)

    def height(self, ell):
        """v_ell(g): the height of the ell-volcano containing the curve."""
        return valuation(self.g, ell) if self.g % ell == 0 else 0

    def __repr__(self):
        return "DiscriminantData(d_pi=%d, d_K=%d, g=%d)" % (
            self.d_pi, self.d_K, self.g)


class Curve:
    """y^2 = x^3 + A x + B over a FieldCtx, with known trace t."""

    __slots__ = ("ctx", "A", "B", "t", "disc")

    def __init__(self, ctx, A, B, t, disc):
        self.ctx = ctx
        self.A = A
        self.B = B
        self.t = t
        self.disc = disc

    @property
    def order(self):
        return self.ctx.q + 1 - self.t

    def __repr__(self):
        return "Curve(q=%d^%d, A=%d, B=%d, t=%d)" % (
            self.ctx.p, self.ctx.r, self.A.encode(), self.B.encode(), self.t)

    def __eq__(self, other):
        return (isinstance(other, Curve) and self.ctx.key == other.ctx.key
                and self.A == other.A and self.B == other.B
                and self.t == other.t)


def _make_disc(ctx, t):
    d_pi = t * t - 4 * ctx.q
    if d_pi >= 0:
        raise BadTrace("t^2 - 4q must be negative")
    return DiscriminantData(d_pi)


def curve_new(ctx, A, B, t, rng=None, check=True):
    """Validated curve constructor.

    Rejects singular curves, the special j-invariants 0 and 1728,
    supersingular traces, and traces failing the Hasse bound or the
    random-point order test (q + 1 - t) * P = O on eight samples.
    """
    A = ctx.elem(A)
    B = ctx.elem(B)
    if A.is_zero():
        raise SpecialJInvariant("j = 0 (A = 0) is out of scope")
    if B.is_zero():
        raise SpecialJInvariant("j = 1728 (B = 0) is out of scope")
    if (4 * A * A * A + 27 * B * B).is_zero():
        raise SingularCurve("discriminant vanishes")
    if t % ctx.p == 0:
        raise Supersingular("p divides the trace")
    if t * t > 4 * ctx.q:
        raise BadTrace("trace outside the Hasse interval")
    E = Curve(ctx, A, B, t, _make_disc(ctx, t))
    if check:
        rng = rng or random.Random(0xACCE55)
        n = E.order
        for _ in range(8):
            if scalar_mul(E, n, random_point(E, rng)) is not None:
                raise BadTrace("q + 1 - t does not annihilate a random point")
    return E


def is_on_curve(E, P):
    if P is None:
        return True
    x, y = P
    return (y * y - (x * x * x + E.A * x + E.B)).is_zero()


def neg(E, P):
    return None if P is None else (P[0], -P[1])


def add(E, P, Q):
    """Chord-tangent addition; mixed-context coordinates raise ContextMismatch."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2).is_zero():
            return None
        lam = (3 * x1 * x1 + E.A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def dbl(E, P):
    return add(E, P, P)


def sub(E, P, Q):
    return add(E, P, neg(E, Q))


def _jacobian_dbl(E, P):
    X, Y, Z = P
    if Y.is_zero():
        return None
    Y2 = Y * Y
    S = 4 * X * Y2
    Z2 = Z * Z
    M = 3 * X * X + E.A * Z2 * Z2
    X3 = M * M - 2 * S
    Y3 = M * (S - X3) - 8 * Y2 * Y2
    return (X3, Y3, 2 * Y * Z)


def _jacobian_add_affine(E, P, Q):
    """P in Jacobian coordinates plus Q affine."""
    if P is None:
        return (Q[0], Q[1], E.ctx.one())
    X1, Y1, Z1 = P
    x2, y2 = Q
    Z1Z1 = Z1 * Z1
    U2 = x2 * Z1Z1
    S2 = y2 * Z1Z1 * Z1
    if U2 == X1:
        if S2 == Y1:
            return _jacobian_dbl(E, P)
        return None
    H = U2 - X1
    R = S2 - Y1
    HH = H * H
    HHH = H * HH
    V = X1 * HH
    X3 = R * R - HHH - 2 * V
    Y3 = R * (V - X3) - Y1 * HHH
    return (X3, Y3, Z1 * H)


def scalar_mul(E, k, P):
    """k * P by double-and-add; Jacobian internally for large k."""
    if P is None or k == 0:
        return None
    if k < 0:
        k, P = -k, neg(E, P)
    if k.bit_length() <= 24:
        R = None
        Q = P
        while k:
            if k & 1:
                R = add(E, R, Q)
            k >>= 1
            if k:
                Q = dbl(E, Q)
        return R
    acc = None
    for bit in bin(k)[2:]:
        if acc is not None:
            acc = _jacobian_dbl(E, acc)
        if bit == "1":
            acc = _jacobian_add_affine(E, acc, P)
    if acc is None:
        return None
    X, Y, Z = acc
    zi = Z.inv()
    zi2 = zi * zi
    return (X * zi2, Y * zi2 * zi)


def random_point(E, rng):
    """Uniform affine point: random x, solve for y, random sign."""
    ctx = E.ctx
    while True:
        x = ctx.random_element(rng)
        rhs = x * x * x + E.A * x + E.B
        y = ctx.sqrt(rhs)
        if y is None:
            continue
        if not y.is_zero() and rng.getrandbits(1):
            y = -y
        return (x, y)


def j_invariant(E):
    a3 = 4 * E.A * E.A * E.A
    return 1728 * a3 / (a3 + 27 * E.B * E.B)


def curve_from_j(ctx, j, t, rng=None, check_points=8):
    """A curve with the given j-invariant and trace.

    Builds the standard model A = 3k, B = 2k with k = j / (1728 - j) and
    returns its quadratic twist instead when the order check picks the other
    trace sign.  Raises NoMatchingTwist when neither matches, which signals
    an inconsistent (j, t) pair.
    """
    rng = rng or random.Random(0x1A57)
    j = ctx.elem(j)
    if j.is_zero() or j == 1728:
        raise SpecialJInvariant("j in {0, 1728} is out of scope")
    k = j / (1728 - j)
    A, B = 3 * k, 2 * k
    disc = _make_disc(ctx, t)
    E = Curve(ctx, A, B, t, disc)
    if _passes_order_check(E, rng, check_points):
        return E
    Et = quadratic_twist(E)
    Et = Curve(Et.ctx, Et.A, Et.B, t, disc)  # keep the requested trace
    if _passes_order_check(Et, rng, check_points):
        return Et
    raise NoMatchingTwist("no curve with j=%d has trace %d" % (j.encode(), t))


def _passes_order_check(E, rng, samples):
    n = E.order
    for _ in range(samples):
        if scalar_mul(E, n, random_point(E, rng)) is not None:
            return False
    return True


def quadratic_twist(E):
    """The twist (c^2 A, c^3 B) by the smallest non-residue c; trace -t."""
    ctx = E.ctx
    c = ctx._smallest_nonresidue()
    return Curve(ctx, c * c * E.A, c * c * c * E.B, -E.t, _make_disc(ctx, -E.t))


def trace_power(t, q, r):
    """Trace of Frobenius over F_{q^r} from the trace t over F_q."""
    if r == 0:
        return 2
    a, b = 2, t
    for _ in range(r - 1):
        a, b = b, t * b - q * a
    return b


def torsion_extension_degree(E, ell):
    """Smallest extension (and twist flag) giving rational ell-torsion points.

    Tries r = ord_ell(q) and 2 ord_ell(q), preferring the smaller degree and
    taking the quadratic twist over the extension when that is what carries
    the ell-part of the group order.
    """
    from .field import mult_order
    if ell == E.ctx.p:
        raise BadInput("ell equals the field characteristic")
    q = E.ctx.q
    if ell == 2:
        orders = [1]
    else:
        orders = [mult_order(q, ell)]
        orders.append(2 * orders[0])
    for r in orders:
        tr = trace_power(E.t, q, r)
        qr = q**r
        if (qr + 1 - tr) % ell == 0:
            return r, False
        if (qr + 1 + tr) % ell == 0:
            return r, True
    raise BadInput("no ell-torsion over degree ord or 2*ord; "
                   "the curve has exactly two rational ell-isogenies")


def base_change(E, r):
    """The same curve over F_{q^r}, with the trace carried along."""
    if r == 1:
        return E
    ctx = E.ctx
    big = make_field(ctx.p, ctx.r * r)
    if ctx.r == 1:
        lift = lambda e: big.elem(e.c[0])
    else:
        root = _embedding_root(ctx, big)
        def lift(e, _root=root):
            acc = big.zero()
            for c in reversed(e.c):
                acc = acc * _root + big.elem(c)
            return acc
    t_new = trace_power(E.t, ctx.q, r)
    return Curve(big, lift(E.A), lift(E.B), t_new, _make_disc(big, t_new))


def _embedding_root(small, big):
    """Smallest root in `big` of the modulus defining `small`."""
    mod = Poly.from_ints(big, list(small.modulus_tail) + [1])
    roots = poly_roots(mod)
    if not roots:
        raise BadInput("embedding root not found; fields incompatible")
    return roots[0]


def point_order_ell_power(E, P, ell, cap=64):
    """Smallest k with ell^k * P = O, assuming the order is an ell power."""
    k = 0
    while P is not None:
        if k > cap:
            raise BadInput("point order is not a power of %d" % ell)
        P = scalar_mul(E, ell, P)
        k += 1
    return k


def ec_dlog(E, base, target, ell, k):
    """alpha with target = alpha * base, where base has order ell^k.

    Pohlig-Hellman digit extraction with baby-step giant-step in the
    order-ell subgroup; raises NotInSubgroup when target is outside <base>.
    """
    if target is None:
        return 0
    if k == 0:
        raise NotInSubgroup("base is the identity but target is not")
    gamma = scalar_mul(E, ell ** (k - 1), base)
    m = math.isqrt(ell - 1) + 1
    baby = {}
    acc = None
    for j in range(m):
        key = None if acc is None else (acc[0].c, acc[1].c)
        baby.setdefault(key, j)
        acc = add(E, acc, gamma)
    giant = neg(E, scalar_mul(E, m, gamma))

    def digit(Q):
        cur = Q
        for i in range(m + 1):
            key = None if cur is None else (cur[0].c, cur[1].c)
            j = baby.get(key)
            if j is not None:
                return (i * m + j) % ell
            cur = add(E, cur, giant)
        return None

    alpha = 0
    for i in range(k):
        Q = sub(E, target, scalar_mul(E, alpha, base))
        Q = scalar_mul(E, ell ** (k - 1 - i), Q)
        d = digit(Q)
        if d is None:
            raise NotInSubgroup("digit %d of the point log is undefined" % i)
        alpha += d * ell**i
    check = scalar_mul(E, alpha, base)
    if (check is None) != (target is None) or (
            check is not None and (check[0] != target[0] or check[1] != target[1])):
        raise NotInSubgroup("point log does not verify")
    return alpha


def cardinality_small(E):
    """Exact #E(F_q) by an x-sweep; only sensible for q below 2^32."""
    ctx = E.ctx
    if ctx.q >= 1 << 32:
        raise FieldTooLarge("cardinality sweep limited to q < 2^32")
    count = 1  # point at infinity
    if ctx.r == 1:
        p = ctx.p
        a, b = E.A.encode(), E.B.encode()
        half = (p - 1) // 2
        for x in range(p):
            rhs = (x * x * x + a * x + b) % p
            if rhs == 0:
                count += 1
            elif pow(rhs, half, p) == 1:
                count += 2
    else:
        for n in range(ctx.q):
            x = ctx.decode(n)
            rhs = x * x * x + E.A * x + E.B
            if rhs.is_zero():
                count += 1
            elif ctx.is_square(rhs):
                count += 2
    return count


def short_weierstrass_from_general(ctx, a1, a2, a3, a4, a6):
    """Complete the square and cube to normalize a general Weierstrass model.

    Valid in characteristic > 3.  Returns (A, B) with the substitution
    y -> y - (a1 x + a3)/2, x -> x - b2/12 applied.
    """
    a1, a2, a3, a4, a6 = (ctx.elem(v) for v in (a1, a2, a3, a4, a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
    return (-c4 / 48, -c6 / 864)
