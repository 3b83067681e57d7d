"""Small integer helpers shared across modules."""

from functools import reduce
from math import gcd, isqrt


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorint(n):
    """Prime factorisation as a sorted list of ``(prime, exponent)``."""
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def prime_factors(n):
    return [p for p, _ in factorint(n)]


def divisors(n):
    divs = [1]
    for p, k in factorint(n):
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def prime_power(n):
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, or ``None``."""
    if n < 2:
        return None
    f = factorint(n)
    if len(f) != 1:
        return None
    return f[0]


def lcm(*values):
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def additive_order(x, n):
    """Order of ``x`` in the cyclic group Z/n."""
    return n // gcd(n, x % n) if n > 1 else 1
