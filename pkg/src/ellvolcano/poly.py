"""Dense univariate polynomials over a FieldCtx and root finding.

Root finding follows the classic two-stage plan: gcd with x^q - x isolates
the product of distinct linear factors, then randomized equal-degree
splitting peels the roots off.  The returned list is sorted by canonical
integer encoding, so callers see deterministic output even though the
splitting itself is randomized.
"""

import random

from .errors import BadInput, ContextMismatch
from .field import FieldElem


class Poly:
    """Polynomial with FieldElem coefficients, constant term first.

    The zero polynomial stores an empty coefficient list; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        for c in coeffs:
            if c.ctx.key != ctx.key:
                raise ContextMismatch("coefficient from a different field")
        self.ctx = ctx
        self.coeffs = list(coeffs)

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.elem(v) for v in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ctx.key == other.ctx.key
                and [c.c for c in self.coeffs] == [c.c for c in other.coeffs])

    def __call__(self, x):
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return Poly(self.ctx, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx, [])
        out = [self.ctx.zero() for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise BadInput("division by the zero polynomial")
        q = [self.ctx.zero()] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        dlead = other.coeffs[-1].inv()
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * dlead
            k = len(rem) - len(other.coeffs)
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.ctx, q), Poly(self.ctx, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inv()
        return Poly(self.ctx, [c * inv for c in self.coeffs])

    def mulmod(self, other, mod):
        return (self * other) % mod

    def powmod(self, e, mod):
        result = Poly.from_ints(self.ctx, [1])
        base = self % mod
        while e:
            if e & 1:
                result = result.mulmod(base, mod)
            base = base.mulmod(base, mod)
            e >>= 1
        return result

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __repr__(self):
        return "Poly(%s)" % " ".join(str(c.encode()) for c in self.coeffs)


def poly_roots(f, ctx=None, rng=None):
    """All roots of f in its field, multiplicity collapsed, sorted canonically."""
    if ctx is not None and f.ctx.key != ctx.key:
        raise ContextMismatch("polynomial not over the given field")
    ctx = f.ctx
    if f.is_zero():
        raise BadInput("root finding needs a nonzero polynomial")
    rng = rng or random.Random(0x5EED)
    q = ctx.q
    x = Poly.from_ints(ctx, [0, 1])
    roots = []
    # strip roots at zero early so splitting works on invertible shifts
    f = Poly(ctx, list(f.coeffs))
    if f.coeffs and f.coeffs[0].is_zero():
        roots.append(ctx.zero())
        while f.coeffs and f.coeffs[0].is_zero():
            f = Poly(ctx, f.coeffs[1:])
    if f.degree >= 1:
        xq = x.powmod(q, f)
        lin = f.gcd(xq - x)
        roots.extend(_split_linear(lin, rng))
    return sorted(set(roots), key=lambda e: e.encode())


def _split_linear(g, rng):
    """Roots of a squarefree product of linear factors, by random splitting."""
    ctx = g.ctx
    if g.degree <= 0:
        return []
    if g.degree == 1:
        a, b = g.coeffs[0], g.coeffs[1]
        return [-a / b]
    half = (ctx.q - 1) // 2
    while True:
        shift = ctx.random_element(rng)
        probe = Poly(ctx, [shift, ctx.one()])  # x + shift
        s = probe.powmod(half, g) - Poly.from_ints(ctx, [1])
        h = g.gcd(s)
        if 0 < h.degree < g.degree:
            return _split_linear(h, rng) + _split_linear(g // h, rng)
