"""Factorization of integer polynomials.

Squarefree decomposition over Z, then for each squarefree part a
factorization modulo a small prime (distinct-degree plus equal-degree
splitting), multifactor Hensel lifting and exhaustive recombination.
"""
from __future__ import annotations

import itertools
import math
import random

from . import _poly as P

MAX_DEGREE = 32

_PRIMES = [p for p in range(3, 400) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def squarefree_decomposition(f: list[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm on a primitive polynomial with positive leading coefficient.

    Returns ``[(g_i, i), ...]`` with each ``g_i`` squarefree, pairwise coprime
    and ``f == prod g_i**i``.
    """
    out = []
    a = P.gcd_z(f, P.derivative(f))
    b = P.exact_div(f, a)
    c = P.exact_div(P.derivative(f), a)
    d = P.sub(c, P.derivative(b))
    i = 1
    while P.deg(b) > 0:
        a = P.gcd_z(b, d)
        b = P.exact_div(b, a)
        if P.deg(a) > 0:
            out.append((a, i))
        c = P.exact_div(d, a)
        d = P.sub(c, P.derivative(b))
        i += 1
    return out


def _distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out = []
    h = [0, 1]
    f = P.monic_p(f, p)
    i = 0
    while P.deg(f) >= 2 * (i + 1):
        i += 1
        h = P.powmod_p(h, p, f, p)
        g = P.gcd_p(P.sub_p(h, [0, 1], p), f, p)
        if P.deg(g) > 0:
            out.append((g, i))
            f = P.divmod_p(f, g, p)[0]
            h = P.divmod_p(h, f, p)[1]
    if P.deg(f) > 0:
        out.append((P.monic_p(f, p), P.deg(f)))
    return out


def _equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = P.deg(f)
    if n == d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        a = P.trim([rng.randrange(p) for _ in range(n)])
        if P.deg(a) < 1:
            continue
        g = P.gcd_p(a, f, p)
        if 0 < P.deg(g) < n:
            break
        b = P.sub_p(P.powmod_p(a, e, f, p), [1], p)
        g = P.gcd_p(b, f, p)
        if 0 < P.deg(g) < n:
            break
    other = P.divmod_p(f, g, p)[0]
    return _equal_degree(g, d, p, rng) + _equal_degree(P.monic_p(other, p), d, p, rng)


def factor_mod_p(f: list[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a squarefree polynomial modulo an odd prime."""
    rng = random.Random(p)
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree(g, d, p, rng))
    return sorted(out)


def _hensel_pair(f, g, h, p, k):
    """Lift ``f = g h (mod p)`` to ``mod p**k``; ``h`` monic, ``lc(g) = lc(f)``."""
    _, s, t = P.xgcd_p(g, h, p)
    m = p
    g = P.trim(list(g))
    g[-1] = f[-1]
    for _ in range(1, k):
        e = P.sub(f, P.mul(g, h))
        e = P.mod_p([x // m for x in e], p)
        q, r = P.divmod_p(P.mul(e, s), h, p)
        dg = P.add_p(P.mul(e, t), P.mul(q, g), p)
        g = P.add(g, P.scale(dg, m))
        h = P.add(h, P.scale(r, m))
        m *= p
        g, h = P.mod_p(g, m), P.mod_p(h, m)
        g[-1] = f[-1]
    return g, h


def hensel_lift(f: list[int], factors: list[list[int]], p: int, k: int) -> list[list[int]]:
    """Lift monic factors of ``f mod p`` to monic factors of ``f / lc(f) mod p**k``."""
    if len(factors) == 1:
        m = p ** k
        inv = pow(f[-1], -1, m)
        return [P.mod_p([x * inv for x in f], m)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g0 = [f[-1] % p]
    for q in left:
        g0 = P.mul_p(g0, q, p)
    h0 = [1]
    for q in right:
        h0 = P.mul_p(h0, q, p)
    g, h = _hensel_pair(f, g0, h0, p, k)
    return hensel_lift(g, left, p, k) + hensel_lift(h, right, p, k)


def _coefficient_bound(f: list[int]) -> int:
    n = P.deg(f)
    norm = math.isqrt(sum(x * x for x in f)) + 1
    return (2 ** n) * norm * abs(f[-1])


def _choose_prime(f: list[int]) -> tuple[int, list[list[int]]]:
    best = None
    tried = 0
    for p in _PRIMES:
        if f[-1] % p == 0:
            continue
        fp = P.mod_p(f, p)
        if P.deg(P.gcd_p(fp, P.derivative(fp), p)) > 0:
            continue
        facs = factor_mod_p(fp, p)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 6:
            break
    if best is None:
        raise RuntimeError("no suitable prime found")
    return best


def factor_squarefree(f: list[int]) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree polynomial of degree >= 1."""
    if P.deg(f) <= 1:
        return [f]
    p, modular = _choose_prime(f)
    if len(modular) == 1:
        return [f]
    bound = 2 * _coefficient_bound(f)
    k = 1
    while p ** k <= bound:
        k += 1
    m = p ** k
    lifted = hensel_lift(f, modular, p, k)
    found = []
    remaining = list(range(len(lifted)))
    g = f
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for subset in itertools.combinations(remaining, size):
            cand = [g[-1]]
            for i in subset:
                cand = P.mod_p(P.mul(cand, lifted[i]), m)
            cand = P.primitive(P.symmetric_mod(cand, m))
            quotient = P.exact_div(g, cand)
            if quotient is not None:
                found.append(cand)
                g = quotient
                remaining = [i for i in remaining if i not in subset]
                hit = True
                break
        if not hit:
            size += 1
    found.append(P.primitive(g))
    return found


def factor_int_poly(f: list[int]) -> tuple[int, list[tuple[list[int], int]]]:
    """``(content, [(irreducible, multiplicity), ...])`` for a nonzero polynomial.

    Factors are primitive with positive leading coefficient; the sign is kept
    on the content.  Degree is capped at :data:`MAX_DEGREE`.
    """
    f = P.trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if P.deg(f) > MAX_DEGREE:
        raise ValueError(f"degree {P.deg(f)} exceeds the factorization cap {MAX_DEGREE}")
    c = P.content(f)
    if f[-1] < 0:
        c = -c
    prim = [x // c for x in f]
    out = []
    if P.deg(prim) >= 1:
        for g, mult in squarefree_decomposition(prim):
            for q in factor_squarefree(g):
                out.append((q, mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[0], fm[1]))
    return c, out
