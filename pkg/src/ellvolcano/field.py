"""Prime-field and extension-field arithmetic with arbitrary-precision elements.

A field F_{p^r} is represented by a :class:`FieldCtx` holding the prime p,
the degree r and (for r > 1) a monic irreducible modulus x^r + tail chosen
deterministically, so equal (p, r) always produce interoperable contexts.
Elements are immutable coefficient vectors in the modulus basis, encoded
canonically as the integer sum(c_i * p^i).

Multiplication for large degrees packs coefficient vectors into single big
integers (Kronecker substitution) so one bignum product performs the whole
convolution; degree-84 fields used by the larger worked examples run at
roughly 100 us per multiplication this way.
"""

import functools
import math
import random

from .errors import (BadCharacteristic, BadInput, ContextMismatch,
                     DivisionByZero, NonPrime, NotInSubgroup)
from .integers import factorize, is_prime

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def mpz(x):
        return x

_KRONECKER_MIN_DEGREE = 12


class _Arith:
    """Raw arithmetic on coefficient tuples for F_p[x] / (x^r + tail)."""

    def __init__(self, p, r, tail):
        self.p = p
        self.r = r
        self.tail = tuple(tail) if tail is not None else None
        # nonzero tail entries drive the reduction x^r = -tail
        self.tail_nz = ([(i, c) for i, c in enumerate(self.tail) if c]
                        if self.tail is not None else None)
        slot_bits = 2 * p.bit_length() + r.bit_length() + 2
        self.slot_bytes = (slot_bits + 7) // 8
        self.use_kronecker = r >= _KRONECKER_MIN_DEGREE

    def _pack(self, c):
        w = self.slot_bytes
        return mpz(int.from_bytes(
            b"".join(v.to_bytes(w, "little") for v in c), "little"))

    def _unpack(self, n, count):
        w = self.slot_bytes
        raw = int(n).to_bytes(count * w + 8, "little")
        return [int.from_bytes(raw[i * w:(i + 1) * w], "little")
                for i in range(count)]

    def mul(self, a, b):
        p, r = self.p, self.r
        if r == 1:
            return (a[0] * b[0] % p,)
        if self.use_kronecker:
            conv = self._unpack(self._pack(a) * self._pack(b), 2 * r - 1)
        else:
            conv = [0] * (2 * r - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        conv[i + j] += ai * bj
        return self._reduce(conv)

    def _reduce(self, conv):
        # fold x^(r+k) = -tail * x^k from the top down
        r, p = self.r, self.p
        for i in range(len(conv) - 1, r - 1, -1):
            hi = conv[i]
            if hi:
                base = i - r
                for j, tj in self.tail_nz:
                    conv[base + j] -= hi * tj
        return tuple(v % p for v in conv[:r])

    def sqr(self, a):
        return self.mul(a, a)

    def pow(self, a, e):
        r = self.r
        one = (1,) + (0,) * (r - 1)
        if e == 0:
            return one
        out = one
        base = a
        for bit in bin(e)[2:]:
            out = self.mul(out, out)
            if bit == "1":
                out = self.mul(out, base)
        return out

    def inv(self, a):
        p, r = self.p, self.r
        if r == 1:
            if a[0] == 0:
                raise DivisionByZero("inverse of zero")
            return (pow(a[0], -1, p),)
        if not any(a):
            raise DivisionByZero("inverse of zero")
        # extended Euclid on (modulus, a) over F_p
        u = list(self.tail) + [1]
        v = list(a)
        su, sv = [0], [1]

        def deg(c):
            d = len(c) - 1
            while d >= 0 and c[d] == 0:
                d -= 1
            return d

        du, dv = deg(u), deg(v)
        while dv > 0:
            if du < dv:
                u, v, su, sv, du, dv = v, u, sv, su, dv, du
                continue
            q = u[du] * pow(v[dv], -1, p) % p
            sh = du - dv
            for i in range(dv + 1):
                u[sh + i] = (u[sh + i] - q * v[i]) % p
            if len(su) < len(sv) + sh:
                su.extend([0] * (len(sv) + sh - len(su)))
            for i in range(len(sv)):
                su[sh + i] = (su[sh + i] - q * sv[i]) % p
            du = deg(u)
            if du < dv:
                u, v, su, sv, du, dv = v, u, sv, su, dv, du
        if dv < 0:
            raise DivisionByZero("inverse of zero")
        c = pow(v[0], -1, p)
        out = [x * c % p for x in sv[:r]]
        out.extend([0] * (r - len(out)))
        return tuple(out)


class FieldCtx:
    """Immutable finite-field context F_q with q = p^r.

    Safe to share between threads: all state after construction is read-only
    apart from plain operation counters and small discrete-log caches.
    """

    def __init__(self, p, r, modulus_tail):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus_tail = modulus_tail  # None for r == 1
        self.key = (p, r, modulus_tail)
        self._arith = _Arith(p, r, modulus_tail)
        self.n_mul = 0
        self.n_inv = 0
        self._dlog_cache = {}
        self._nonresidue = None

    # --- element constructors ---

    def elem(self, value):
        """Coerce an integer (base-field constant) or FieldElem into this field."""
        if isinstance(value, FieldElem):
            if value.ctx.key != self.key:
                raise ContextMismatch("element from a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.r - 1))
        raise BadInput("cannot coerce %r into field element" % (value,))

    def from_coeffs(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.r:
            raise BadInput("expected %d coefficients" % self.r)
        return FieldElem(self, coeffs)

    def zero(self):
        return FieldElem(self, (0,) * self.r)

    def one(self):
        return self.elem(1)

    def gen(self):
        """The class x of the modulus basis (only meaningful for r > 1)."""
        if self.r == 1:
            raise BadInput("prime field has no extension generator")
        return FieldElem(self, (0, 1) + (0,) * (self.r - 2))

    def decode(self, n):
        """Inverse of FieldElem.encode: base-p digits, little-endian."""
        if not 0 <= n < self.q:
            raise BadInput("encoding out of range")
        c = []
        for _ in range(self.r):
            c.append(n % self.p)
            n //= self.p
        return FieldElem(self, tuple(c))

    def random_element(self, rng):
        return self.decode(rng.randrange(self.q))

    # --- arithmetic used by FieldElem (kept here so counters are central) ---

    def _mul(self, a, b):
        self.n_mul += 1
        return self._arith.mul(a, b)

    def _inv(self, a):
        self.n_inv += 1
        return self._arith.inv(a)

    def _pow(self, a, e):
        if e < 0:
            a = self._inv(a)
            e = -e
        if self.r == 1:
            self.n_mul += max(1, int(1.5 * e.bit_length()))
            return (pow(a[0], e, self.p),)
        out = (1,) + (0,) * (self.r - 1)
        for bit in bin(e)[2:] if e else "":
            out = self._mul(out, out)
            if bit == "1":
                out = self._mul(out, a)
        return out

    def reset_counters(self):
        self.n_mul = 0
        self.n_inv = 0

    # --- quadratic structure ---

    def is_square(self, x):
        if x.is_zero():
            return True
        return self._pow(x.c, (self.q - 1) // 2) == self.one().c

    def _smallest_nonresidue(self):
        if self._nonresidue is not None:
            return self._nonresidue
        # every base-field element is a square when r is even, so the scan
        # starts at the extension generator in that case
        start = self.p if (self.r > 1 and self.r % 2 == 0) else 2
        n = start
        while True:
            cand = self.decode(n)
            if not self.is_square(cand):
                self._nonresidue = cand
                return cand
            n += 1

    def sqrt(self, x):
        """A square root of x, or None when x is a non-residue.

        One full-size exponentiation x^((m-1)/2) with m the odd part of q-1
        yields both the Euler test and the Tonelli-Shanks starting values.
        """
        if x.is_zero():
            return x
        q = self.q
        m, s = q - 1, 0
        while m % 2 == 0:
            m //= 2
            s += 1
        w = self._pow(x.c, (m - 1) // 2)
        t = self._mul(self._mul(w, w), x.c)   # x^m
        r_ = self._mul(w, x.c)                # x^((m+1)/2)
        one = self.one().c
        # x is a square iff x^((q-1)/2) = t^(2^(s-1)) equals 1
        e = t
        for _ in range(s - 1):
            e = self._mul(e, e)
        if e != one:
            return None
        z = self._smallest_nonresidue()
        c = self._pow(z.c, m)
        mm = s
        while t != one:
            i, e = 0, t
            while e != one:
                e = self._mul(e, e)
                i += 1
            b = c
            for _ in range(mm - i - 1):
                b = self._mul(b, b)
            mm = i
            c = self._mul(b, b)
            t = self._mul(t, c)
            r_ = self._mul(r_, b)
        return FieldElem(self, r_)

    def __repr__(self):
        if self.r == 1:
            return "FieldCtx(p=%d)" % self.p
        return "FieldCtx(p=%d, r=%d)" % (self.p, self.r)


class FieldElem:
    """Immutable element of a FieldCtx; supports +, -, *, /, ** and ==."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx.key != self.ctx.key:
                raise ContextMismatch("elements from different fields")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElem(self.ctx,
                         tuple((a + b) % p for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElem(self.ctx,
                         tuple((a - b) % p for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx._mul(self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx._mul(self.c, self.ctx._inv(o.c)))

    def __rtruediv__(self, other):
        return self.ctx.elem(other) / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0 and self.is_zero():
            raise DivisionByZero("negative power of zero")
        return FieldElem(self.ctx, self.ctx._pow(self.c, e))

    def inv(self):
        return FieldElem(self.ctx, self.ctx._inv(self.c))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == self.ctx.elem(other).c
        if isinstance(other, FieldElem):
            return self.ctx.key == other.ctx.key and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return not any(self.c)

    def encode(self):
        """Canonical integer encoding sum(c_i * p^i)."""
        n = 0
        for v in reversed(self.c):
            n = n * self.ctx.p + v
        return n

    def __repr__(self):
        return "FieldElem(%d)" % self.encode()

    def __int__(self):
        return self.encode()


def _compose_mod(outer, inner, ar):
    """outer(inner(x)) reduced modulo ar's modulus (coefficient tuples)."""
    acc = (0,) * ar.r
    for c in reversed(outer):
        acc = ar.mul(acc, inner)
        if c:
            acc = ((acc[0] + c) % ar.p,) + acc[1:]
    return acc


def _poly_is_irreducible(p, r, tail, r_prime_divisors):
    """Monic x^r + tail irreducibility over F_p (Rabin's test).

    Frobenius powers x^(p^k) mod f are built by composing x^p with itself,
    which costs r polynomial products per doubling instead of log(p) of them.
    """
    ar = _Arith(p, r, tail)
    x = (0, 1) + (0,) * (r - 2)
    frob = {1: ar.pow(x, p)}

    def frob_power(k):
        if k in frob:
            return frob[k]
        h = k // 2
        fk = _compose_mod(frob_power(h), frob_power(k - h), ar)
        frob[k] = fk
        return fk

    if frob_power(r) != x:
        return False
    for s in r_prime_divisors:
        xs = frob_power(r // s)
        diff = [(a - b) % p for a, b in zip(xs, x)]
        if _poly_gcd_is_nontrivial(diff, list(tail) + [1], p):
            return False
    return True


def _binomial_irreducible(p, r, c0, r_prime_divisors):
    """Irreducibility of x^r + c0 by the classical binomial criterion."""
    a = (-c0) % p  # x^r + c0 = x^r - a
    if a == 0:
        return False
    for s in r_prime_divisors:
        if (p - 1) % s == 0:
            if pow(a, (p - 1) // s, p) == 1:
                return False  # a is an s-th power
        else:
            return False  # every element is an s-th power
    if r % 4 == 0:
        # need a not of the form -4 b^4
        b4 = (-a) * pow(4, -1, p) % p
        if p % 4 == 1:
            if b4 == 0 or pow(b4, (p - 1) // 4, p) == 1:
                return False
        else:
            # fourth powers coincide with squares when p = 3 mod 4
            if pow(b4, (p - 1) // 2, p) == 1:
                return False
    return True


def _poly_gcd_is_nontrivial(a, f, p):
    """True when gcd(a, f) has positive degree (coefficient-list inputs)."""

    def deg(c):
        d = len(c) - 1
        while d >= 0 and c[d] == 0:
            d -= 1
        return d

    u, v = list(f), list(a)
    du, dv = deg(u), deg(v)
    if dv < 0:
        return du > 0
    while dv > 0:
        if du < dv:
            u, v, du, dv = v, u, dv, du
            continue
        q = u[du] * pow(v[dv], -1, p) % p
        sh = du - dv
        for i in range(dv + 1):
            u[sh + i] = (u[sh + i] - q * v[i]) % p
        du = deg(u)
        if du < dv:
            u, v, du, dv = v, u, dv, du
    # loop ends with deg(v) <= 0; v == 0 leaves gcd = u, else gcd is constant
    return dv < 0 and du > 0


@functools.lru_cache(maxsize=64)
def make_field(p, r=1):
    """Build the field F_{p^r} with a deterministic modulus.

    The modulus is x^r + T where T is the tail polynomial with the smallest
    canonical integer encoding making x^r + T irreducible, so two calls with
    equal (p, r) agree exactly.
    """
    if p <= 1 or not is_prime(p):
        raise NonPrime("%d is not prime" % p)
    if p in (2, 3):
        raise BadCharacteristic("characteristic 2 and 3 are unsupported")
    if r < 1:
        raise BadInput("extension degree must be >= 1")
    if r == 1:
        return FieldCtx(p, 1, None)
    divisors = sorted(factorize(r))
    # constant tails first: the binomial criterion decides them in O(log p),
    # and tells us outright when no x^r + c is irreducible for this p
    if all((p - 1) % s == 0 for s in divisors):
        # qualifying constants have density >= ~10% when they exist at all,
        # so a capped scan never misses one in practice
        for c0 in range(1, min(p, 100_000)):
            if _binomial_irreducible(p, r, c0, divisors):
                return FieldCtx(p, r, (c0,) + (0,) * (r - 1))
    n = p  # first tail with a nonzero x coefficient
    while True:
        # decode n into the tail coefficient vector, little-endian base p
        tail = []
        m = n
        for _ in range(r):
            tail.append(m % p)
            m //= p
        if m:
            raise BadInput("no irreducible modulus of degree %d found" % r)
        tail = tuple(tail)
        if tail[0] != 0 and _poly_is_irreducible(p, r, tail, divisors):
            return FieldCtx(p, r, tail)
        n += 1


def mult_order(q, ell):
    """Multiplicative order of q modulo the prime ell."""
    if ell < 2 or not is_prime(ell):
        raise BadInput("ell must be prime")
    if q % ell == 0:
        raise BadInput("ell divides q")
    order = ell - 1
    for s, e in factorize(ell - 1).items():
        for _ in range(e):
            if pow(q, order // s, ell) == 1:
                order //= s
            else:
                break
    return order


def primitive_root_of_unity(ctx, ell, n, rng=None):
    """An element of exact multiplicative order ell^n in ctx."""
    rng = rng or random.Random(0xC0FFEE)
    m = ell**n
    if (ctx.q - 1) % m != 0:
        raise BadInput("ell^n does not divide q - 1")
    cof = (ctx.q - 1) // m
    check = ell ** (n - 1)
    while True:
        h = ctx.random_element(rng)
        if h.is_zero():
            continue
        g = h**cof
        if (g**check).c != ctx.one().c:
            return g


def dlog_prime_power(g, x, ell, n):
    """Discrete log of x in the order-ell^n cyclic group generated by g.

    Pohlig-Hellman digit extraction: each base-ell digit is looked up in a
    table of the ell powers of gamma = g^(ell^(n-1)) when ell is small enough
    to tabulate, and found by baby-step giant-step otherwise.  Raises
    NotInSubgroup when x does not lie in <g>, which doubles as the
    membership test used during Sylow basis construction.
    """
    ctx = g.ctx
    if x.ctx.key != ctx.key:
        raise ContextMismatch("mixed fields in discrete log")
    if x.is_zero():
        raise NotInSubgroup("zero is not in any multiplicative subgroup")
    if (x ** (ell**n)).c != ctx.one().c:
        raise NotInSubgroup("element order does not divide ell^n")
    gamma = g ** (ell ** (n - 1))
    digit = _make_digit_solver(ctx, gamma, ell)
    e = 0
    ginv = g.inv()
    for i in range(n):
        y = (x * ginv**e) ** (ell ** (n - 1 - i))
        d = digit(y)
        if d is None:
            raise NotInSubgroup("digit %d not found" % i)
        e += d * ell**i
    if (g**e).c != x.c:
        raise NotInSubgroup("log does not verify")
    return e


_DLOG_TABLE_MAX = 1 << 20


def _make_digit_solver(ctx, gamma, ell):
    """Return a function solving gamma^d = y for d in [0, ell)."""
    key = (gamma.c, ell)
    cached = ctx._dlog_cache.get(key)
    if cached is not None:
        return cached
    if ell <= _DLOG_TABLE_MAX:
        table = {}
        acc = ctx.one()
        for j in range(ell):
            table.setdefault(acc.c, j)
            acc = acc * gamma

        def solver(y):
            return table.get(y.c)
    else:
        m = math.isqrt(ell) + 1
        baby = {}
        acc = ctx.one()
        for j in range(m):
            baby.setdefault(acc.c, j)
            acc = acc * gamma
        giant = gamma ** ((ell - m) % ell)  # gamma^-m in the subgroup

        def solver(y):
            cur = y
            for i in range(m + 1):
                j = baby.get(cur.c)
                if j is not None:
                    return (i * m + j) % ell
                cur = cur * giant
            return None

    if len(ctx._dlog_cache) > 8:
        ctx._dlog_cache.clear()
    ctx._dlog_cache[key] = solver
    return solver
