"""The integer Laurent polynomial ring Z[t, t^-1].

A :class:`LaurentPoly` is an immutable mapping exponent -> nonzero integer
coefficient.  Divisibility questions ignore powers of ``t`` (they are units),
so gcd, resultant and factorization act on the *normalized part*: the
ordinary polynomial obtained by shifting the lowest exponent to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence

from . import _poly as P
from .errors import MalformedInputError
from .factor import MAX_DEGREE, factor_int_poly


class LaurentPoly:
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (coeffs or {}).items():
            c = int(c)
            if c:
                clean[int(e)] = c
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    # construction
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        """From a dense list ``coeffs[i]`` = coefficient of ``t**(low + i)``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def low(self) -> int:
        return next(iter(self._coeffs)) if self._coeffs else 0

    @property
    def high(self) -> int:
        return next(reversed(self._coeffs)) if self._coeffs else 0

    def items(self):
        return self._coeffs.items()

    def normalized(self) -> tuple[int, list[int]]:
        """``(shift, dense)`` with ``self == t**shift * dense`` and ``dense[0] != 0``."""
        if not self._coeffs:
            return 0, []
        lo = self.low
        dense = [0] * (self.high - lo + 1)
        for e, c in self._coeffs.items():
            dense[e - lo] = c
        return lo, dense

    @property
    def span(self) -> int:
        """Degree of the normalized part."""
        return self.high - self.low if self._coeffs else -1

    def is_unit(self) -> bool:
        return len(self._coeffs) == 1 and abs(next(iter(self._coeffs.values()))) == 1

    def content(self) -> int:
        return P.content(list(self._coeffs.values()))

    def __call__(self, x):
        """Evaluate at a nonzero number (``x**e`` for negative ``e`` included)."""
        return sum(c * x ** e for e, c in self._coeffs.items())

    # arithmetic
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (e, c), = self._coeffs.items()
            return LaurentPoly({e * k: 1 if c == 1 or k % 2 == 0 else -1})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """``self / other`` in Z[t, t^-1] if the division is exact, else ``None``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        s1, a = self.normalized()
        s2, b = other.normalized()
        q = P.exact_div(a, b)
        if q is None:
            return None
        return LaurentPoly.from_coeffs(q, s1 - s2)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for e, c in sorted(self._coeffs.items(), reverse=True):
            if e == 0:
                body = str(abs(c))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # serialization: {"<exponent>": coefficient}
    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, int) and not isinstance(data, bool):
            return cls.const(data)
        if not isinstance(data, dict):
            raise MalformedInputError(f"Laurent polynomial must be an object, got {data!r}")
        out = {}
        for k, v in data.items():
            try:
                e = int(k)
            except (TypeError, ValueError):
                raise MalformedInputError(f"bad exponent key {k!r}") from None
            if str(e) != k:
                raise MalformedInputError(f"non-canonical exponent key {k!r}")
            if isinstance(v, bool) or not isinstance(v, int):
                raise MalformedInputError(f"coefficient of t^{k} must be an integer")
            out[e] = v
        return cls(out)


T = LaurentPoly.t()
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def augmentation(p: LaurentPoly) -> int:
    """Image under ``t -> 1``."""
    return sum(c for _, c in p.items())


def in_S(p: LaurentPoly) -> bool:
    """Membership in ``S = 1 + I``: augmentation equal to 1."""
    return augmentation(p) == 1


# -- truncation to Z[u]/(u^n), u = t - 1 ------------------------------------

@dataclass(frozen=True)
class TruncatedElement:
    """Element of ``Z[u]/(u^depth)`` given by coordinates in ``1, u, ..., u^(depth-1)``."""

    depth: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.depth < 1 or len(self.coords) != self.depth:
            raise ValueError("coords must have exactly `depth` entries")

    def __add__(self, other: "TruncatedElement") -> "TruncatedElement":
        self._check(other)
        return TruncatedElement(self.depth, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "TruncatedElement") -> "TruncatedElement":
        self._check(other)
        return TruncatedElement(self.depth, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other: "TruncatedElement") -> "TruncatedElement":
        self._check(other)
        n = self.depth
        out = [0] * n
        for i, a in enumerate(self.coords):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coords[j]
        return TruncatedElement(n, tuple(out))

    def _check(self, other):
        if other.depth != self.depth:
            raise ValueError("truncation depths differ")

    def multiplication_matrix(self) -> list[list[int]]:
        """Matrix of ``x -> self * x`` on the basis ``u^j`` (column j = self * u^j)."""
        n = self.depth
        return [[self.coords[i - j] if i >= j else 0 for j in range(n)] for i in range(n)]


def _binomial(e: int, j: int) -> int:
    # generalized binomial coefficient, valid for negative e
    if e >= 0:
        return comb(e, j)
    return (-1) ** j * comb(-e + j - 1, j)


def truncate(p: LaurentPoly, n: int) -> TruncatedElement:
    """Image of ``p`` in ``Z[u]/(u^n)`` under ``t -> 1 + u``."""
    if n < 1:
        raise ValueError("truncation depth must be >= 1")
    coords = [0] * n
    for e, c in p.items():
        for j in range(n):
            coords[j] += c * _binomial(e, j)
    return TruncatedElement(n, tuple(coords))


# -- divisibility --------------------------------------------------------

def _dense(p: LaurentPoly) -> list[int]:
    return p.normalized()[1]


def resultant(p: LaurentPoly, q: LaurentPoly) -> int:
    """Resultant of the normalized parts (Sylvester determinant)."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    return resultant_dense(_dense(p), _dense(q))


def resultant_dense(a: list[int], b: list[int]) -> int:
    from .linalg import det_bareiss
    m, n = P.deg(a), P.deg(b)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return det_bareiss(rows)


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in Z[t, t^-1], normalized to lowest exponent 0
    and positive leading coefficient (unique up to units)."""
    if p.is_zero():
        return _normalize_unit(q)
    if q.is_zero():
        return _normalize_unit(p)
    from math import gcd
    c = gcd(p.content(), q.content())
    g = P.gcd_z(_dense(p), _dense(q))
    return LaurentPoly.from_coeffs([c * x for x in g])


def _normalize_unit(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    _, dense = p.normalized()
    if dense[-1] < 0:
        dense = [-x for x in dense]
    return LaurentPoly.from_coeffs(dense)


def factor_integer_poly(p: LaurentPoly) -> tuple[int, list[tuple[LaurentPoly, int]]]:
    """Factor ``p`` over Z up to a power of ``t``.

    Returns ``(content, [(q, multiplicity), ...])``: every ``q`` is primitive,
    irreducible, has nonzero constant term and positive leading coefficient,
    and ``p == t**k * content * prod q**m`` for some integer ``k``.
    """
    if p.is_zero():
        raise ValueError("cannot factor zero")
    dense = _dense(p)
    if P.deg(dense) > MAX_DEGREE:
        raise ValueError(f"degree {P.deg(dense)} exceeds the factorization cap {MAX_DEGREE}")
    c, facs = factor_int_poly(dense)
    return c, [(LaurentPoly.from_coeffs(q), m) for q, m in facs]


def eval_matrix(p: LaurentPoly, T: Sequence[Sequence[int]], T_inv: Sequence[Sequence[int]] | None = None) -> list[list[int]]:
    """``p(T)`` for an integer matrix ``T`` (``T_inv`` needed for negative exponents)."""
    from .linalg import inverse_unimodular, matadd, matpow
    n = len(T)
    out = [[0] * n for _ in range(n)]
    if p.low < 0 and T_inv is None:
        T_inv = inverse_unimodular(T)
    for e, c in p.items():
        power = matpow(T, e) if e >= 0 else matpow(T_inv, -e)
        out = matadd(out, power, c)
    return out
