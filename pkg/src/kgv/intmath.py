"""Exact integer arithmetic helpers: primality, factoring, roots, prime powers.

Everything here is deterministic and exact; no floats are used for results.
"""

from math import gcd, isqrt

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin (exact for n < 3.3e24, which covers all uses here)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
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


def primes_up_to(n):
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if sieve[i]]


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    x, c = 2, 1
    while True:
        y, d = x, 1
        x2 = x
        while d == 1:
            x2 = (x2 * x2 + c) % n
            y2 = (y * y + c) % n
            y = (y2 * y2 + c) % n
            d = gcd(abs(x2 - y), n)
        if d != n:
            return d
        c += 1


def factorize(n):
    """Prime factorisation as a dict {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n):
    """All positive divisors of n, ascending."""
    ds = [1]
    for p, e in sorted(factorize(n).items()):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def prime_power(n):
    """Return (p, k) with n = p^k, or None when n is not a prime power."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


def multiplicative_order(a, n):
    """Order of a modulo n (requires gcd(a, n) = 1)."""
    if gcd(a, n) != 1:
        raise ValueError("element not invertible")
    if n == 1:
        return 1
    group = 1
    for p, e in factorize(n).items():
        group *= (p - 1) * p ** (e - 1)
    order = group
    for p in factorize(group):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def iroot(x, k):
    """Floor of the k-th root of a non-negative integer."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0, k >= 1")
    if k == 1 or x < 2:
        return x
    if k == 2:
        return isqrt(x)
    # Newton iteration seeded from the bit length; exact for integers.
    r = 1 << -(-x.bit_length() // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > x:
        r -= 1
    return r


def pow_frac_ceil(base, num, den):
    """Least integer >= base**(num/den), computed exactly."""
    if base < 1 or den < 1 or num < 0:
        raise ValueError("pow_frac_ceil needs base >= 1, num >= 0, den >= 1")
    if base == 1 or num == 0:
        return 1
    g = gcd(num, den)
    num //= g
    den //= g
    t = base**num
    if den == 1:
        return t
    r = iroot(t, den)
    if r**den < t:
        r += 1
    return r


def ceil_div(a, b):
    """Ceiling of a / b for positive integers."""
    return -(-a // b)


def isqrt_ceil(x):
    """Least integer >= sqrt(x)."""
    r = isqrt(x)
    return r if r * r == x else r + 1
