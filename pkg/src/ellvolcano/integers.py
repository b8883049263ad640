"""Integer number theory helpers: primality, factoring, valuations, square roots."""

import math
import random

from .errors import BadInput, UnfactorableDiscriminant

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67]


def is_prime(n, rounds=64):
    """Miller-Rabin primality test; false-positive probability below 4^-rounds."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def valuation(n, p):
    """Largest e with p^e dividing n (n nonzero)."""
    if n == 0:
        raise BadInput("valuation of zero")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _pollard_rho(n, rng):
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n, trial_bound=10**6):
    """Factor n > 0 into {prime: exponent} by trial division then Pollard rho."""
    if n <= 0:
        raise BadInput("factorize expects a positive integer")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    # wheel over residues coprime to 30
    incr = [4, 2, 4, 2, 4, 6, 2, 6]
    i = 0
    while d * d <= n and d <= trial_bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += incr[i]
        i = (i + 1) % 8
    if n == 1:
        return out
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = _pollard_rho(m, rng)
        stack.extend([d, m // d])
    return out


def sqrt_mod_prime(n, p):
    """A square root of n modulo an odd prime p, or None for a non-residue."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, e = 0, t
        while e != 1:
            e = e * e % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def sqrt_mod_prime_power(n, p, k):
    """Square root of n modulo p^k (p odd prime, gcd(n, p) = 1), or None."""
    s = sqrt_mod_prime(n, p)
    if s is None:
        return None
    mod = p
    for _ in range(k - 1):
        mod2 = mod * p
        f = (s * s - n) % mod2
        s = (s - f * pow(2 * s, -1, mod2)) % mod2
        mod = mod2
    return s


def fundamental_discriminant(d):
    """Split a negative discriminant d as g^2 * d_K with d_K fundamental.

    Returns (d_K, g).  Raises UnfactorableDiscriminant when the square part
    cannot be isolated at desk scale (trial division plus a perfect-square
    and primality check on the cofactor).
    """
    if d >= 0:
        raise BadInput("expected a negative discriminant")
    if d % 4 not in (0, 1):
        raise BadInput("discriminant must be 0 or 1 mod 4")
    n = -d
    g = 1
    squarefree = 1
    for p, e in _factor_square_part(n).items():
        g *= p ** (e // 2)
        if e % 2:
            squarefree *= p
    m = -squarefree
    if m % 4 == 1:
        d_k = m
    else:
        d_k = 4 * m
        if g % 2:
            raise UnfactorableDiscriminant("inconsistent square part for %d" % d)
        g //= 2
    assert g * g * d_k == d
    return d_k, g


def _factor_square_part(n, trial_bound=10**6):
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    incr = [4, 2, 4, 2, 4, 6, 2, 6]
    i = 0
    while d * d <= n and d <= trial_bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += incr[i]
        i = (i + 1) % 8
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            # the cofactor is a perfect square; its prime split is irrelevant
            out[r] = out.get(r, 0) + 2
        elif is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            r3 = round(n ** (1 / 3))
            if r3**3 == n and is_prime(r3):
                out[r3] = out.get(r3, 0) + 3
            else:
                raise UnfactorableDiscriminant(
                    "cannot isolate the square part of %d" % n)
    return out


def legendre(a, p):
    """Legendre symbol (a/p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def crt(residues, moduli):
    """Solve x = r_i mod m_i for pairwise coprime moduli."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        x += m * ((r - x) * pow(m, -1, mi) % mi)
        m *= mi
    return x % m
