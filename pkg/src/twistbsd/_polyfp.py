"""Dense polynomials over F_p as lists of ints, lowest degree first.

Only what the field constructor needs: multiplication and reduction modulo
a monic polynomial, powering, gcd and the Rabin irreducibility test.
"""

from sympy import factorint


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def rem(a, m, p):
    """Remainder of a modulo a monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            shift = k - dm
            for j in range(dm + 1):
                a[shift + j] -= c * m[j]
    return trim([c % p for c in a[:dm]])


def mulmod(a, b, m, p):
    return rem(mul(a, b, p), m, p)


def powmod(a, e, m, p):
    result = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = mulmod(base, base, m, p)
    return result


def sub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return trim([(x - y) % p for x, y in zip(a, b)])


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [(c * inv) % p for c in b]
        a, b = b, rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def is_irreducible(m, p):
    """Rabin's test for a monic polynomial m of degree >= 1."""
    n = len(m) - 1
    if n == 1:
        return True
    x = [0, 1]
    for ell in factorint(n):
        h = powmod(x, p ** (n // ell), m, p)
        if gcd(m, sub(h, x, p), p) != [1]:
            return False
    return sub(powmod(x, p**n, m, p), x, p) == []
