"""Degree-ell isogenies in normalized form, and modular-polynomial neighbors.

The codomain of an isogeny with kernel <K> is computed from the classical
kernel sums (A - 5v, B - 7w); evaluation uses the rational map for x and the
normalized-differential identity Y = y * dX/dx for y, which avoids a second
error-prone formula.  Modular polynomials are loaded from a documented text
format and reduced into the working field; levels 2..13 ship with the
package, plus level 31 as benchmark support data.
"""

import importlib.resources
import random

from .curve import Curve, add, is_on_curve, scalar_mul
from .errors import (BadKernel, KernelNotRational, ParseError,
                     SpecialJInvariant, WrongLevel)
from .poly import Poly, poly_roots

_BUNDLED_LEVELS = (2, 3, 5, 7, 11, 13)


class Isogeny:
    """Separable degree-ell isogeny given by a kernel generator.

    Calling the object evaluates the isogeny on a point of the domain;
    kernel points map to None (the point at infinity).
    """

    __slots__ = ("domain", "codomain", "kernel_gen", "degree", "_xs", "_vs",
                 "_us")

    def __init__(self, domain, codomain, kernel_gen, degree, xs, vs, us):
        self.domain = domain
        self.codomain = codomain
        self.kernel_gen = kernel_gen
        self.degree = degree
        self._xs = xs
        self._vs = vs
        self._us = us

    def __call__(self, P):
        if P is None:
            return None
        x, y = P
        diffs = [x - xq for xq in self._xs]
        if any(d.is_zero() for d in diffs):
            return None  # P sits in the kernel
        invs = _batch_invert(self.domain.ctx, diffs)
        X = x
        dX = self.domain.ctx.one()
        for vq, uq, inv in zip(self._vs, self._us, invs):
            inv2 = inv * inv
            X = X + vq * inv + uq * inv2
            dX = dX - vq * inv2 - 2 * uq * inv2 * inv
        return (X, y * dX)

    def __repr__(self):
        return "Isogeny(degree=%d, j: %d -> %d)" % (
            self.degree,
            _j(self.domain).encode(), _j(self.codomain).encode())


def _j(E):
    from .curve import j_invariant
    return j_invariant(E)


def _batch_invert(ctx, values):
    """Montgomery simultaneous inversion; one field inversion total."""
    prefix = []
    acc = ctx.one()
    for v in values:
        prefix.append(acc)
        acc = acc * v
    inv = acc.inv()
    out = [None] * len(values)
    for i in range(len(values) - 1, -1, -1):
        out[i] = prefix[i] * inv
        inv = inv * values[i]
    return out


def _kernel_representatives(E, K, ell):
    """Affine x, y for K, 2K, ..., ((ell-1)/2) K via Jacobian accumulation."""
    from .curve import _jacobian_add_affine
    reps = []
    acc = None
    for _ in range((ell - 1) // 2):
        acc = _jacobian_add_affine(E, acc, K)
        reps.append(acc)
    zs = [R[2] for R in reps]
    zinvs = _batch_invert(E.ctx, zs)
    out = []
    for (X, Y, _), zi in zip(reps, zinvs):
        zi2 = zi * zi
        out.append((X * zi2, Y * zi2 * zi))
    return out


def velu(E, K, ell):
    """The isogeny with kernel <K>, for K of exact prime order ell.

    The kernel points may live in an extension of the field the caller
    thinks of as the base; the codomain is produced over the field of K.
    Cost is O(ell) field operations for construction and per evaluation.
    """
    if K is None:
        raise BadKernel("kernel generator is the identity")
    if K[0].ctx.key != E.ctx.key:
        raise KernelNotRational("kernel point lives outside the curve's field")
    if not is_on_curve(E, K):
        raise BadKernel("kernel generator is not on the curve")
    if scalar_mul(E, ell, K) is not None:
        raise BadKernel("kernel generator order does not divide %d" % ell)
    ctx = E.ctx
    if ell == 2:
        x0, y0 = K
        if not y0.is_zero():
            raise BadKernel("2-isogeny kernel must be a 2-torsion point")
        gx = 3 * x0 * x0 + E.A
        v = gx
        w = x0 * gx
        xs, vs, us = [x0], [gx], [ctx.zero()]
    else:
        reps = _kernel_representatives(E, K, ell)
        xs, vs, us = [], [], []
        v = ctx.zero()
        w = ctx.zero()
        for xq, yq in reps:
            gx = 3 * xq * xq + E.A
            gy = -2 * yq
            vq = 2 * gx
            uq = gy * gy
            xs.append(xq)
            vs.append(vq)
            us.append(uq)
            v = v + vq
            w = w + uq + xq * vq
    A2 = E.A - 5 * v
    B2 = E.B - 7 * w
    if A2.is_zero() or B2.is_zero():
        raise SpecialJInvariant("codomain has j-invariant 0 or 1728")
    codomain = Curve(ctx, A2, B2, E.t, E.disc)
    return Isogeny(E, codomain, K, ell, xs, vs, us)


class ModPoly:
    """Symmetric modular polynomial of prime level, reduced into a field."""

    __slots__ = ("ell", "ctx", "terms")

    def __init__(self, ell, ctx, terms):
        self.ell = ell
        self.ctx = ctx
        # only i >= j is stored; symmetry is implied
        self.terms = tuple(sorted(terms))

    def univariate(self, j):
        """The polynomial Phi_ell(X, j) over the field of j."""
        ctx = self.ctx
        if j.ctx.key != ctx.key:
            raise WrongLevel("j-invariant from a different field")
        d = self.ell + 1
        jpow = [ctx.one()]
        for _ in range(d):
            jpow.append(jpow[-1] * j)
        coeffs = [ctx.zero()] * (d + 1)
        for i, k, c in self.terms:
            ce = ctx.elem(c)
            coeffs[i] = coeffs[i] + ce * jpow[k]
            if i != k:
                coeffs[k] = coeffs[k] + ce * jpow[i]
        return Poly(self.ctx, coeffs)

    def __call__(self, x, y):
        """Evaluate Phi_ell at a pair of field elements."""
        acc = self.ctx.zero()
        for i, k, c in self.terms:
            ce = self.ctx.elem(c)
            acc = acc + ce * x**i * y**k
            if i != k:
                acc = acc + ce * x**k * y**i
        return acc


def parse_modpoly(text, ell, ctx):
    """Parse the `ell N` / `i j c` text format, reducing coefficients mod p."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty modular polynomial file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "ell":
        raise ParseError("first line must be 'ell <level>'")
    try:
        file_ell = int(head[1])
    except ValueError:
        raise ParseError("malformed level %r" % head[1]) from None
    if file_ell != ell:
        raise WrongLevel("file has level %d, expected %d" % (file_ell, ell))
    terms = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ParseError("malformed term line %r" % ln)
        try:
            i, k, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("malformed term line %r" % ln) from None
        if i < k:
            i, k = k, i
        if not 0 <= i <= ell + 1:
            raise ParseError("term degree %d out of range" % i)
        terms[(i, k)] = terms.get((i, k), 0) + c
    reduced = [(i, k, c % ctx.p) for (i, k), c in terms.items() if c % ctx.p]
    return ModPoly(ell, ctx, reduced)


def load_modpoly(path, ell, ctx):
    """Load a modular polynomial from a file path."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as ex:
        raise ParseError("cannot read %s: %s" % (path, ex)) from None
    return parse_modpoly(text, ell, ctx)


def bundled_modpoly(ell, ctx):
    """A modular polynomial shipped with the package (levels 2..13, and 31)."""
    name = "phi%d.txt" % ell
    ref = importlib.resources.files("ellvolcano") / "data" / name
    if not ref.is_file():
        raise ParseError("no bundled modular polynomial for level %d" % ell)
    return parse_modpoly(ref.read_text(encoding="ascii"), ell, ctx)


def bundled_levels():
    return _BUNDLED_LEVELS


def neighbors(j, mp, rng=None):
    """Distinct j-invariants ell-isogenous to j, sorted canonically."""
    rng = rng or random.Random(0x0DD5)
    f = mp.univariate(j)
    return poly_roots(f, rng=rng)
