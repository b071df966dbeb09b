"""Exact integer matrix kernels and finitely generated abelian groups.

Matrices are plain lists of rows of Python ints.  Every routine returns
fresh lists and never mutates its arguments.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import IllDefinedMapError

IntMatrix = list[list[int]]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def copy_matrix(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(map(int, row)) for row in A]


def shape(A: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, int]:
    if A:
        return len(A), len(A[0])
    return 0, (cols or 0)


def transpose(A: Sequence[Sequence[int]], cols: int = 0) -> IntMatrix:
    if not A:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{inner} @ {len(B)}x?")
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def matadd(A, B, scale: int = 1) -> IntMatrix:
    return [[a + scale * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matpow(A: Sequence[Sequence[int]], k: int) -> IntMatrix:
    result = identity(len(A))
    base = copy_matrix(A)
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def hstack(*blocks: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
    if rows is None:
        rows = next(len(b) for b in blocks if b)
    out = [[] for _ in range(rows)]
    for b in blocks:
        if not b:
            continue
        for i in range(rows):
            out[i].extend(b[i])
    return out


def det_bareiss(A: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant (Bareiss elimination)."""
    n = len(A)
    if n == 0:
        return 1
    M = copy_matrix(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def solve_rational(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Solve A X = B for square nonsingular A over the rationals."""
    n = len(A)
    m = len(B[0]) if B else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(x) for x in B[i]] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:n + m] for row in M]


def solve_integer(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    """Solve A X = B for square nonsingular A, requiring an integral solution."""
    X = solve_rational(A, B)
    out = []
    for row in X:
        if any(x.denominator != 1 for x in row):
            raise ValueError("system has no integral solution")
        out.append([int(x) for x in row])
    return out


def inverse_unimodular(A: Sequence[Sequence[int]]) -> IntMatrix:
    return solve_integer(A, identity(len(A)))


# -- normal forms -----------------------------------------------------------

def _row_addmul(M: IntMatrix, dst: int, src: int, q: int) -> None:
    # row[dst] += q * row[src]
    if q:
        rs = M[src]
        M[dst] = [a + q * b for a, b in zip(M[dst], rs)]


def hermite_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ A`` and ``U`` unimodular.  ``H`` is in
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)`` and zero rows collected at the bottom.
    """
    H = copy_matrix(A)
    m = len(H)
    n = len(H[0]) if H else (cols or 0)
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            best = None
            for i in range(r, m):
                v = H[i][j]
                if v and (best is None or abs(v) < abs(H[best][j])):
                    best = i
            if best is None:
                break
            if best != r:
                H[r], H[best] = H[best], H[r]
                U[r], U[best] = U[best], U[r]
            p = H[r][j]
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // p
                    _row_addmul(H, i, r, -q)
                    _row_addmul(U, i, r, -q)
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][j]
        for i in range(r):
            q = H[i][j] // p
            if q:
                _row_addmul(H, i, r, -q)
                _row_addmul(U, i, r, -q)
        r += 1
    return H, U


def hnf_basis(rows: Sequence[Sequence[int]], cols: int) -> IntMatrix:
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    if not rows:
        return []
    H, _ = hermite_normal_form(rows, cols)
    return [row for row in H if any(row)]


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ A @ V == D``.

    Pivots on a nonzero entry of minimal absolute value (ties: lowest row,
    then lowest column) so outputs are deterministic.
    """
    D = copy_matrix(A)
    m = len(D)
    n = len(D[0]) if D else (cols or 0)
    U = identity(m)
    V = identity(n)

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def col_addmul(M, dst, src, q):
        if q:
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return _snf_finish(D, U, V, m, n)
            _, bi, bj = best
            if bi != t:
                D[t], D[bi] = D[bi], D[t]
                U[t], U[bi] = U[bi], U[t]
            if bj != t:
                swap_cols(D, t, bj)
                swap_cols(V, t, bj)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    _row_addmul(D, i, t, -q)
                    _row_addmul(U, i, t, -q)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    col_addmul(D, j, t, -q)
                    col_addmul(V, j, t, -q)
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            _row_addmul(D, t, bad, 1)
            _row_addmul(U, t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return _snf_finish(D, U, V, m, n)


def _snf_finish(D, U, V, m, n):
    for t in range(min(m, n)):
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V


def smith_diagonal(A: Sequence[Sequence[int]], cols: int | None = None) -> list[int]:
    D, _, _ = smith_normal_form(A, cols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# -- finitely generated abelian groups --------------------------------------

@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dm`` with ``d1 | d2 | ... | dm``, all ``di >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        tors = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in tors):
            raise ValueError(f"invariant factors must be >= 2: {tors}")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"invariant factors must form a divisor chain: {tors}")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int], generators: int) -> "FgAbelianGroup":
        """Group ``Z^generators / <d_i e_i>`` for an arbitrary diagonal."""
        orders = [abs(d) for d in diagonal] + [0] * (generators - len(diagonal))
        finite = [d for d in orders if d > 1]
        if all(b % a == 0 for a, b in zip(finite, finite[1:])):
            return cls(orders.count(0), tuple(finite))
        return abelian_from_cyclic(orders)

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return abelian_from_cyclic([0] * (self.free_rank + other.free_rank)
                                   + list(self.torsion) + list(other.torsion))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "FgAbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))


def abelian_from_cyclic(orders: Sequence[int]) -> FgAbelianGroup:
    """Normalize a direct sum of cyclic groups ``Z/n_i`` (``n_i = 0`` means ``Z``)."""
    free = sum(1 for d in orders if d == 0)
    finite = [abs(d) for d in orders if abs(d) > 1]
    # invariant factors by prime-power bookkeeping
    by_prime: dict[int, list[int]] = {}
    for d in finite:
        for p, e in _factor_small(d).items():
            by_prime.setdefault(p, []).append(p ** e)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort()
        for k, q in enumerate(powers):
            factors[length - len(powers) + k] *= q
    return FgAbelianGroup(free, tuple(factors))


def _factor_small(n: int) -> dict[int, int]:
    from sympy import factorint
    return {int(p): int(e) for p, e in factorint(n).items()}


class Presentation(NamedTuple):
    """Abelian group ``Z^generators / column span of relations``."""

    generators: int
    relations: IntMatrix  # generators x m


def cokernel(A: Sequence[Sequence[int]], generators: int) -> FgAbelianGroup:
    """``<generators | columns of A>`` in invariant-factor form."""
    if generators == 0:
        return FgAbelianGroup()
    if not A or not A[0]:
        return FgAbelianGroup(generators)
    if len(A) != generators:
        raise ValueError(f"relation matrix has {len(A)} rows, expected {generators}")
    diag = smith_diagonal(A)
    return FgAbelianGroup.from_diagonal(diag, generators)


def abelian_iso(G1: FgAbelianGroup, G2: FgAbelianGroup) -> bool:
    return G1.free_rank == G2.free_rank and G1.torsion == G2.torsion


def integer_kernel(A: Sequence[Sequence[int]], cols: int) -> IntMatrix:
    """Basis (as rows) of ``{x in Z^cols : A x = 0}``."""
    if not A:
        return identity(cols)
    H, U = hermite_normal_form(transpose(A, cols))
    return [U[i] for i, row in enumerate(H) if not any(row)]


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coefficients ``c`` with ``c @ basis == v``, or ``None``.

    ``basis`` must be in row HNF with no zero rows (see :func:`hnf_basis`).
    """
    v = list(v)
    coeffs = []
    pos = 0
    for row in basis:
        while pos < len(v) and row[pos] == 0:
            if v[pos]:
                return None
            pos += 1
        p = row[pos]
        q, rem = divmod(v[pos], p)
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
        pos += 1
    if any(v):
        return None
    return coeffs


def columns_in_span(R: Sequence[Sequence[int]], W: Sequence[Sequence[int]], rows: int) -> bool:
    """Whether every column of ``W`` lies in the integer column span of ``R``."""
    if not W or not W[0]:
        return True
    basis = hnf_basis(transpose(R, rows), rows) if R and R[0] else []
    return all(lattice_coordinates(basis, col) is not None for col in transpose(W))


def subgroup_of_cokernel(R: Sequence[Sequence[int]], W: Sequence[Sequence[int]], rows: int) -> FgAbelianGroup:
    """Isomorphism type of the subgroup generated by the columns of ``W``
    inside ``Z^rows / colspan(R)``."""
    m = len(W[0]) if W and W[0] else 0
    if m == 0:
        return FgAbelianGroup()
    r = len(R[0]) if R and R[0] else 0
    stacked = hstack(W, R, rows=rows) if r else copy_matrix(W)
    K = integer_kernel(stacked, m + r)
    rel = transpose([row[:m] for row in K], m)
    return cokernel(rel, m)


def quotient_map_is_iso(A_pres: Presentation, B_pres: Presentation, map_matrix: Sequence[Sequence[int]]) -> bool:
    """Whether ``map_matrix`` (``B.generators x A.generators``) induces an
    isomorphism ``coker(A) -> coker(B)``.

    Raises :class:`IllDefinedMapError` when relations of ``A`` are not sent
    into the relation lattice of ``B``.
    """
    na, ra = A_pres
    nb, rb = B_pres
    if na and (len(map_matrix) != nb or (nb and len(map_matrix[0]) != na)):
        raise ValueError("map matrix has the wrong shape")
    if ra and ra[0]:
        image = matmul(map_matrix, ra) if nb else []
        if nb and not columns_in_span(rb, image, nb):
            raise IllDefinedMapError("map does not carry relations into relations")
    src = cokernel(ra, na)
    tgt = cokernel(rb, nb)
    if not abelian_iso(src, tgt):
        return False
    if nb == 0:
        return True
    blocks = [b for b in (map_matrix, rb) if b and b[0]]
    coker = cokernel(hstack(*blocks, rows=nb), nb) if blocks else FgAbelianGroup(nb)
    # surjective endomorphisms of f.g. abelian groups are injective (Hopfian)
    return coker.is_trivial
