"""Miller's algorithm, reduced Tate and Weil pairings, and pairing profiles.

Everything here runs in embedding degree 1: the pairing orders divide q - 1,
values live in mu_m inside the base field, and no denominator-elimination
shortcut is valid.  The Weil pairing therefore evaluates Miller functions on
translated divisors on both sides, which keeps the value an exact root of
unity instead of one modulo m-th powers.
"""

import random

from .curve import add, random_point, scalar_mul, sub
from .errors import (BadOrder, DivisorSupportHit, EmbeddingDegree, FloorCurve,
                     RandomnessExhausted)
from .field import dlog_prime_power, primitive_root_of_unity
from .integers import legendre, sqrt_mod_prime

_RETRY_BUDGET = 32


def _line(E, T, U, S):
    """Value at S of the line through T and U (tangent when T = U).

    The vertical through T is returned when U = -T.  A zero value means S
    sits on the divisor support, which callers must treat as a retry.
    """
    x1, y1 = T
    xs, ys = S
    x2, y2 = U
    if x1 == x2 and (y1 + y2).is_zero():
        return xs - x1
    if x1 == x2 and y1 == y2:
        lam = (3 * x1 * x1 + E.A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    return ys - y1 - lam * (xs - x1)


def miller(E, P, m, S1, S2):
    """f_{m,P}(S1) / f_{m,P}(S2) for the function with divisor m(P) - m(O).

    Standard double-and-add accumulation of line/vertical quotients,
    tracking numerator and denominator separately so a single inversion
    finishes the job.  Raises DivisorSupportHit whenever a line or vertical
    vanishes at S1 or S2; the caller re-randomizes its auxiliary point.
    """
    if P is None:
        raise BadOrder("Miller function needs an affine base point")
    if S1 is None or S2 is None:
        raise DivisorSupportHit("evaluation at the point at infinity")
    ctx = E.ctx
    num = den = ctx.one()
    T = P
    for bit in bin(m)[3:]:
        l1 = _line(E, T, T, S1)
        l2 = _line(E, T, T, S2)
        T = add(E, T, T)
        v1, v2 = _verticals(T, S1, S2, ctx)
        if l1.is_zero() or l2.is_zero() or v1.is_zero() or v2.is_zero():
            raise DivisorSupportHit("line through a doubling step vanished")
        num = num * num * l1 * v2
        den = den * den * l2 * v1
        if bit == "1":
            l1 = _line(E, T, P, S1)
            l2 = _line(E, T, P, S2)
            T = add(E, T, P)
            v1, v2 = _verticals(T, S1, S2, ctx)
            if l1.is_zero() or l2.is_zero() or v1.is_zero() or v2.is_zero():
                raise DivisorSupportHit("line through an addition step vanished")
            num = num * l1 * v2
            den = den * l2 * v1
    return num / den


def _verticals(T, S1, S2, ctx):
    if T is None:
        one = ctx.one()
        return one, one
    return S1[0] - T[0], S2[0] - T[0]


def _tate_any(E, P, Q, m, rng):
    """Reduced Tate pairing of order m (any m dividing q - 1)."""
    ctx = E.ctx
    if (ctx.q - 1) % m:
        raise EmbeddingDegree("pairing order must divide q - 1")
    if scalar_mul(E, m, P) is not None:
        raise BadOrder("first argument must be killed by m")
    if P is None:
        return ctx.one()
    e = (ctx.q - 1) // m
    for _ in range(_RETRY_BUDGET):
        R = random_point(E, rng)
        S1 = add(E, Q, R)
        if S1 is None:
            continue
        try:
            f = miller(E, P, m, S1, R)
        except DivisorSupportHit:
            continue
        return f**e
    raise RandomnessExhausted("no valid auxiliary point after %d tries"
                             % _RETRY_BUDGET)


def tate_reduced(E, P, Q, ell, n, rng=None):
    """T_{ell^n}(P, Q) = f_{ell^n,P}((Q+R)-(R)) ^ ((q-1)/ell^n) in mu_{ell^n}."""
    rng = rng or random.Random(0x7A7E)
    return _tate_any(E, P, Q, ell**n, rng)


def weil_pairing(E, P, Q, ell, rng=None):
    """Weil pairing of two points of order dividing ell.

    Both Miller functions are evaluated on divisors translated by shared
    auxiliary points, which makes the value exact (not just defined modulo
    ell-th powers); equals 1 exactly when P and Q are dependent.
    """
    rng = rng or random.Random(0x3E11)
    ctx = E.ctx
    if scalar_mul(E, ell, P) is not None or scalar_mul(E, ell, Q) is not None:
        raise BadOrder("arguments must be killed by ell")
    if P is None or Q is None:
        return ctx.one()
    for _ in range(_RETRY_BUDGET):
        R1 = random_point(E, rng)
        R2 = random_point(E, rng)
        # f_{ell,P} on (Q+R2)-(R2) translated by -R1; the translation realizes
        # the function with divisor ell(P+R1) - ell(R1)
        e1a = sub(E, add(E, Q, R2), R1)
        e1b = sub(E, R2, R1)
        e2a = sub(E, add(E, P, R1), R2)
        e2b = sub(E, R1, R2)
        if e1a is None or e1b is None or e2a is None or e2b is None:
            continue
        try:
            fP = miller(E, P, ell, e1a, e1b)
            fQ = miller(E, Q, ell, e2a, e2b)
        except DivisorSupportHit:
            continue
        return fP / fQ
    raise RandomnessExhausted("no valid auxiliary points after %d tries"
                             % _RETRY_BUDGET)


class PairingProfile:
    """Result of the pairing-triple scan on a Sylow basis.

    count is the number of ell-th power iterations needed to trivialize the
    triple (a, b, c) of order-ell^n2 pairings; k = count - 1 and the triple
    order is ell^(count).  count = 0 means the triple was (1,1,1) from the
    start: the curve sits above the second stability level and nothing can
    be classified at this field size.  (La, Lb, Lc) are base-g logs of the
    last nontrivial triple and roots holds the projective zeros (x : y) of
    La x^2 + Lb xy + Lc y^2 over F_ell.
    """

    __slots__ = ("ell", "n2", "count", "La", "Lb", "Lc", "roots")

    def __init__(self, ell, n2, count, La, Lb, Lc, roots):
        self.ell = ell
        self.n2 = n2
        self.count = count
        self.La = La
        self.Lb = Lb
        self.Lc = Lc
        self.roots = roots

    @property
    def k(self):
        return self.count - 1

    @property
    def degenerate(self):
        """True when the triple carried no information (above second stability)."""
        return self.count == 0

    def to_json(self):
        return {"count": self.count, "k": self.k, "La": self.La,
                "Lb": self.Lb, "Lc": self.Lc,
                "roots": [list(r) for r in self.roots]}

    def __repr__(self):
        return ("PairingProfile(count=%d, P=%d x^2 + %d xy + %d y^2, roots=%s)"
                % (self.count, self.La, self.Lb, self.Lc, self.roots))


def conic_roots_mod_ell(La, Lb, Lc, ell):
    """Projective zeros (x : y) of La x^2 + Lb xy + Lc y^2 modulo ell.

    Representatives are normalized to y = 1 or to (1 : 0); there are at most
    two zeros since the form is nonzero.  ell = 2 is handled by exhausting
    the three projective points.
    """
    La, Lb, Lc = La % ell, Lb % ell, Lc % ell
    if La == 0 and Lb == 0 and Lc == 0:
        raise BadOrder("zero form has no root count")
    if ell == 2:
        out = []
        for x, y in ((1, 0), (0, 1), (1, 1)):
            if (La * x * x + Lb * x * y + Lc * y * y) % 2 == 0:
                out.append((x, y))
        return sorted(out)
    roots = []
    if La == 0:
        roots.append((1, 0))
        if Lb != 0:
            roots.append((-Lc * pow(Lb, -1, ell) % ell, 1))
    else:
        disc = (Lb * Lb - 4 * La * Lc) % ell
        chi = legendre(disc, ell)
        if chi == 0:
            roots.append((-Lb * pow(2 * La, -1, ell) % ell, 1))
        elif chi == 1:
            s = sqrt_mod_prime(disc, ell)
            inv2a = pow(2 * La, -1, ell)
            roots.append(((-Lb + s) * inv2a % ell, 1))
            roots.append(((-Lb - s) * inv2a % ell, 1))
    return sorted(set(roots))


def pairing_profile(E, P1, P2, n1, n2, ell, rng=None):
    """Pairing triple, degeneracy count, logs and conic roots for a Sylow basis.

    Follows the direction-finding recipe: with Q1 = ell^(n1-n2) P1, compute
    a = T(Q1,Q1), b = T(Q1,P2) T(P2,Q1), c = T(P2,P2) at order ell^n2, raise
    the triple to the ell-th power until trivial while counting iterations,
    then take logs of the last nontrivial triple to a primitive ell-th root
    of unity.  b doubles the symmetric pairing's cross term, so the form is
    La x^2 + Lb xy + Lc y^2 and no square root of the pairing is ever needed.
    """
    if n2 < 1:
        raise FloorCurve("pairing profile needs a full-rank Sylow basis")
    rng = rng or random.Random(0xBA5E)
    ctx = E.ctx
    m = ell**n2
    if (ctx.q - 1) % m:
        raise EmbeddingDegree("ell^n2 must divide q - 1")
    Q1 = scalar_mul(E, ell ** (n1 - n2), P1)
    a = _tate_any(E, Q1, Q1, m, rng)
    b = _tate_any(E, Q1, P2, m, rng) * _tate_any(E, P2, Q1, m, rng)
    c = _tate_any(E, P2, P2, m, rng)
    one = ctx.one()
    if a == one and b == one and c == one:
        return PairingProfile(ell, n2, 0, 0, 0, 0, [])
    count = 0
    last = None
    while not (a == one and b == one and c == one):
        last = (a, b, c)
        a, b, c = a**ell, b**ell, c**ell
        count += 1
        if count > n2:
            raise BadOrder("pairing triple order exceeds ell^n2; "
                           "inputs are not a valid Sylow basis")
    g = primitive_root_of_unity(ctx, ell, 1, rng)
    La, Lb, Lc = (dlog_prime_power(g, v, ell, 1) for v in last)
    roots = conic_roots_mod_ell(La, Lb, Lc, ell)
    return PairingProfile(ell, n2, count, La, Lb, Lc, roots)
