# Dense univariate polynomial helpers.  Coefficient lists are ordered from
# the constant term upward and carry no trailing zeros (zero poly = []).
from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list) -> int:
    return len(a) - 1


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: list, b: list) -> list:
    return add(a, [-x for x in b])


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a: list, c) -> list:
    return trim([c * x for x in a])


def content(a: list) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def primitive(a: list) -> list:
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def derivative(a: list) -> list:
    return trim([i * a[i] for i in range(1, len(a))])


def divmod_rational(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = trim(a)
    return trim(q), a


def exact_div(a: list, b: list) -> list | None:
    """Integer polynomial ``a / b`` if it divides exactly over Z, else ``None``."""
    q, r = divmod_rational(a, b)
    if r or any(x.denominator != 1 for x in q):
        return None
    return [int(x) for x in q]


def pseudo_rem(a: list, b: list) -> list:
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1]
        k = len(a) - len(b)
        a = [lb * x for x in a]
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = trim(a)
    return a


def gcd_z(a: list, b: list) -> list:
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    a, b = trim(a), trim(b)
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    a, b = primitive(a), primitive(b)
    while b:
        r = pseudo_rem(a, b)
        a, b = b, (primitive(r) if r else [])
    return primitive(a)


def evaluate(a: list, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


# -- arithmetic modulo a prime -------------------------------------------

def mod_p(a: list, p: int) -> list:
    return trim([x % p for x in a])


def add_p(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub_p(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul_p(a, b, p):
    return mod_p(mul(a, b), p)


def divmod_p(a: list, b: list, p: int) -> tuple[list, list]:
    a = mod_p(a, p)
    b = mod_p(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero mod p")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        a = trim(a)
    return trim(q), a


def monic_p(a: list, p: int) -> list:
    a = mod_p(a, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def gcd_p(a: list, b: list, p: int) -> list:
    a, b = mod_p(a, p), mod_p(b, p)
    while b:
        a, b = b, divmod_p(a, b, p)[1]
    return monic_p(a, p)


def xgcd_p(a: list, b: list, p: int) -> tuple[list, list, list]:
    """``(g, s, t)`` with ``s a + t b = g`` monic gcd modulo ``p``."""
    r0, r1 = mod_p(a, p), mod_p(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub_p(s0, mul_p(q, s1, p), p)
        t0, t1 = t1, sub_p(t0, mul_p(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return ([x * inv % p for x in r0], [x * inv % p for x in s0], [x * inv % p for x in t0])


def powmod_p(base: list, e: int, modulus: list, p: int) -> list:
    result = [1]
    base = divmod_p(base, modulus, p)[1]
    while e:
        if e & 1:
            result = divmod_p(mul_p(result, base, p), modulus, p)[1]
        e >>= 1
        if e:
            base = divmod_p(mul_p(base, base, p), modulus, p)[1]
    return result


def symmetric_mod(a: list, m: int) -> list:
    half = m // 2
    return trim([((x % m) - m if (x % m) > half else (x % m)) for x in a])
