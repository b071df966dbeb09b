"""Arithmetic in Z[zeta_p], ideal lattices, the quadratic subfield Q(sqrt(-23)),
and principality of two-generated ideals of Z[t, t^-1].

Elements of Z[zeta_p] use the power basis ``1, zeta, ..., zeta^(p-2)``;
products are reduced modulo ``Phi_p``.  Ideals are full-rank sublattices
stored by their row HNF basis in power-basis coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import _poly as P
from . import linalg as la
from .errors import MalformedInputError
from .laurent import LaurentPoly, augmentation, resultant
from .modules import LatticeModule, ModuleMap


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def cyclotomic_poly(p: int) -> LaurentPoly:
    """``Phi_p = 1 + t + ... + t^(p-1)`` for prime ``p``."""
    return LaurentPoly.from_coeffs([1] * p)


@dataclass(frozen=True)
class CyclotomicElement:
    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2 or self.p > 64:
            raise MalformedInputError(f"p must be an odd prime <= 64, got {self.p}")
        if len(self.coords) != self.p - 1:
            raise MalformedInputError(f"expected {self.p - 1} coordinates")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def from_exponents(cls, p: int, values: dict[int, int] | Sequence[int]) -> "CyclotomicElement":
        """Reduce ``sum c_e zeta^e`` (any integer exponents) to the power basis."""
        items = values.items() if isinstance(values, dict) else enumerate(values)
        full = [0] * p
        for e, c in items:
            full[e % p] += c
        top = full[p - 1]
        return cls(p, tuple(full[i] - top for i in range(p - 1)))

    @classmethod
    def from_laurent(cls, f: LaurentPoly, p: int) -> "CyclotomicElement":
        return cls.from_exponents(p, dict(f.items()))

    @classmethod
    def one(cls, p: int) -> "CyclotomicElement":
        return cls.from_exponents(p, {0: 1})

    @classmethod
    def zeta(cls, p: int) -> "CyclotomicElement":
        return cls.from_exponents(p, {1: 1})

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicElement":
        return cls.from_exponents(p, {0: n})

    def _coerce(self, other):
        if isinstance(other, int):
            return CyclotomicElement.integer(self.p, other)
        if isinstance(other, CyclotomicElement) and other.p == self.p:
            return other
        raise TypeError("incompatible cyclotomic operands")

    def __add__(self, other):
        other = self._coerce(other)
        return CyclotomicElement(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prod = P.mul(list(self.coords), list(other.coords))
        return CyclotomicElement.from_exponents(self.p, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CyclotomicElement.one(self.p)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_laurent(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.coords)

    def multiplication_matrix(self) -> la.IntMatrix:
        """Column ``j`` holds the coordinates of ``self * zeta^j``."""
        n = self.p - 1
        cols = [(self * CyclotomicElement.from_exponents(self.p, {j: 1})).coords for j in range(n)]
        return la.transpose(cols, n)

    def norm(self) -> int:
        """Absolute norm, as ``|det|`` of the multiplication matrix."""
        return abs(la.det_bareiss(self.multiplication_matrix()))

    def to_json(self) -> dict:
        return {"p": self.p, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicElement":
        try:
            return cls(int(data["p"]), tuple(data["coords"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad cyclotomic element: {exc}") from None


def quadratic_residues(p: int) -> list[int]:
    return sorted({k * k % p for k in range(1, (p - 1) // 2 + 1)})


def gaussian_period(p: int) -> CyclotomicElement:
    """``sum_{k=1}^{(p-1)/2} zeta^(k^2)`` for a prime ``p = 3 mod 4``."""
    if not _is_prime(p) or p % 4 != 3:
        raise MalformedInputError(f"quadratic Gaussian period needs a prime p = 3 mod 4, got {p}")
    return CyclotomicElement.from_exponents(p, {e: 1 for e in quadratic_residues(p)})


def period_lift(p: int = 23) -> LaurentPoly:
    """``2 (1 + sum_{e in QR} t^e) - N(t)``, an element of S mapping to ``2 + 2P``."""
    terms = {0: 2}
    for e in quadratic_residues(p):
        terms[e] = 2
    return LaurentPoly(terms) - cyclotomic_poly(p)


def eval_p_of_zeta(p: int = 23) -> CyclotomicElement:
    return CyclotomicElement.from_laurent(period_lift(p), p)


# -- ideal lattices -------------------------------------------------------

@dataclass(frozen=True)
class IdealLattice:
    p: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.p - 1
        B = tuple(tuple(int(x) for x in row) for row in self.basis)
        if len(B) != n or any(len(r) != n for r in B):
            raise MalformedInputError(f"ideal basis must be {n}x{n}")
        object.__setattr__(self, "basis", B)

    @property
    def rank(self) -> int:
        return self.p - 1

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.basis]

    def elements(self) -> list[CyclotomicElement]:
        return [CyclotomicElement(self.p, r) for r in self.basis]

    def contains(self, x: CyclotomicElement) -> bool:
        return la.lattice_coordinates(self.rows(), x.coords) is not None

    def is_zeta_closed(self) -> bool:
        z = CyclotomicElement.zeta(self.p)
        return all(self.contains(z * b) for b in self.elements())

    def column_basis(self) -> la.IntMatrix:
        """Basis vectors as columns (the inclusion into Z[zeta_p])."""
        return la.transpose(self.rows())

    def to_json(self) -> dict:
        return {"p": self.p, "basis": self.rows()}

    @classmethod
    def from_json(cls, data: dict) -> "IdealLattice":
        try:
            return cls(int(data["p"]), tuple(map(tuple, data["basis"])))
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad ideal lattice: {exc}") from None


def _lattice_from_rows(p: int, rows: list[list[int]]) -> IdealLattice:
    basis = la.hnf_basis(rows, p - 1)
    if len(basis) != p - 1:
        raise MalformedInputError("generators span a lattice of deficient rank")
    return IdealLattice(p, tuple(map(tuple, basis)))


def ideal_from_generators(gens: Sequence[CyclotomicElement]) -> IdealLattice:
    """HNF basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise MalformedInputError("the zero ideal has no lattice basis")
    p = gens[0].p
    z = CyclotomicElement.zeta(p)
    rows = []
    for g in gens:
        x = g
        for _ in range(p - 1):
            rows.append(list(x.coords))
            x = x * z
    L = _lattice_from_rows(p, rows)
    assert L.is_zeta_closed()
    return L


def ideal_norm(L: IdealLattice) -> int:
    return abs(la.det_bareiss(L.rows()))


def ideal_mul(L1: IdealLattice, L2: IdealLattice) -> IdealLattice:
    if L1.p != L2.p:
        raise MalformedInputError("ideals live in different cyclotomic rings")
    rows = [list((a * b).coords) for a in L1.elements() for b in L2.elements()]
    return _lattice_from_rows(L1.p, rows)


def ring_module(p: int) -> LatticeModule:
    """Z[zeta_p] with ``t`` acting as multiplication by ``zeta``."""
    return LatticeModule(tuple(map(tuple, CyclotomicElement.zeta(p).multiplication_matrix())))


def ideal_module(L: IdealLattice) -> LatticeModule:
    """The ideal as a lattice module, in coordinates of its HNF basis."""
    C = L.column_basis()
    T = CyclotomicElement.zeta(L.p).multiplication_matrix()
    action = la.solve_integer(C, la.matmul(T, C))
    return LatticeModule(tuple(map(tuple, action)))


def inclusion_map(L: IdealLattice) -> ModuleMap:
    return ModuleMap(ideal_module(L), ring_module(L.p), L.column_basis())


def multiplication_into(L: IdealLattice, s: CyclotomicElement) -> ModuleMap:
    """``x -> s x`` from Z[zeta_p] into ``L`` (requires ``s`` in ``L``)."""
    C = L.column_basis()
    mat = la.solve_integer(C, s.multiplication_matrix())
    return ModuleMap(ring_module(L.p), ideal_module(L), mat)


# -- the quadratic subfield Q(sqrt(-23)) -------------------------------------

QUADRATIC_D = 23


@dataclass(frozen=True)
class QuadraticElement:
    """``(a + b sqrt(-23)) / 2`` with ``a = b (mod 2)``."""

    a: int
    b: int

    def __post_init__(self):
        if (self.a - self.b) % 2:
            raise MalformedInputError("a and b must have the same parity")

    @classmethod
    def from_omega(cls, x: int, y: int) -> "QuadraticElement":
        """``x + y w`` with ``w = (1 + sqrt(-23)) / 2``."""
        return cls(2 * x + y, y)

    def omega_coords(self) -> tuple[int, int]:
        return ((self.a - self.b) // 2, self.b)

    def __mul__(self, other: "QuadraticElement") -> "QuadraticElement":
        a = (self.a * other.a - QUADRATIC_D * self.b * other.b) // 2
        b = (self.a * other.b + self.b * other.a) // 2
        return QuadraticElement(a, b)

    def __add__(self, other):
        return QuadraticElement(self.a + other.a, self.b + other.b)

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b)

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.a, -self.b)

    def norm(self) -> int:
        return (self.a * self.a + QUADRATIC_D * self.b * self.b) // 4

    def __str__(self):
        sign = "+" if self.b >= 0 else "-"
        b = abs(self.b)
        root = "sqrt(-23)" if b == 1 else f"{b}*sqrt(-23)"
        return f"({self.a} {sign} {root})/2"


OMEGA = QuadraticElement(1, 1)


def quadratic_ideal(gens: Sequence[QuadraticElement]) -> tuple[tuple[int, ...], ...]:
    """HNF of the ideal generated by ``gens``, in coordinates ``(x, y)`` of ``x + y w``."""
    rows = []
    for g in gens:
        for b in (QuadraticElement(2, 0), OMEGA):
            rows.append(list((g * b).omega_coords()))
    basis = la.hnf_basis(rows, 2)
    return tuple(map(tuple, basis))


def quadratic_ideal_mul(I: Sequence[Sequence[int]], J: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    gens = [QuadraticElement.from_omega(*x) * QuadraticElement.from_omega(*y) for x in I for y in J]
    return quadratic_ideal(gens)


def quadratic_ideal_norm(I: Sequence[Sequence[int]]) -> int:
    return abs(la.det_bareiss(I))


def norm_form_solutions(n: int) -> list[QuadraticElement]:
    """All ``(a + b sqrt(-23))/2`` of norm ``n`` by exhaustive search."""
    target = 4 * n
    out = []
    bmax = int((target / QUADRATIC_D) ** 0.5) + 1
    amax = int(target ** 0.5) + 1
    for b in range(-bmax, bmax + 1):
        for a in range(-amax, amax + 1):
            if (a - b) % 2 == 0 and a * a + QUADRATIC_D * b * b == target:
                out.append(QuadraticElement(a, b))
    return out


def quadratic_class_check() -> dict:
    """Exhaustive evidence that ``a = (2, (1+sqrt(-23))/2)`` has order 3 in the class group.

    The statement for Z[zeta_23] itself is recorded as taken from the
    literature, not checked.
    """
    a = quadratic_ideal([QuadraticElement(4, 0), OMEGA])
    a2 = quadratic_ideal_mul(a, a)
    a3 = quadratic_ideal_mul(a2, a)

    def principal_generators(ideal):
        n = quadratic_ideal_norm(ideal)
        return [g for g in norm_form_solutions(n) if quadratic_ideal([g]) == ideal]

    norm2 = norm_form_solutions(2)
    a2_gens = principal_generators(a2)
    a3_gens = principal_generators(a3)
    a3_gen = max(a3_gens, key=lambda g: (g.a, g.b)) if a3_gens else None
    return {
        "ideal": {"generators": ["2", "(1 + sqrt(-23))/2"], "basis": [list(r) for r in a],
                  "norm": quadratic_ideal_norm(a)},
        "norm_2_elements": [str(g) for g in norm2],
        "a_principal": bool(norm2),
        "a2": {"basis": [list(r) for r in a2], "norm": quadratic_ideal_norm(a2),
               "norm_candidates": [str(g) for g in norm_form_solutions(quadratic_ideal_norm(a2))],
               "principal": bool(a2_gens),
               "equals_(2)": a2 == quadratic_ideal([QuadraticElement(4, 0)])},
        "a3": {"basis": [list(r) for r in a3], "norm": quadratic_ideal_norm(a3),
               "principal": bool(a3_gens),
               "generator": None if a3_gen is None else str(a3_gen),
               "generator_ab": None if a3_gen is None else [a3_gen.a, a3_gen.b]},
        "checked": "exhaustive",
        "cyclotomic_class_group": {
            "statement": "class group of Q(zeta_23) has order 3, generated by (2, 1 + P)",
            "checked": "assumed-from-literature",
        },
    }


# -- principality of two-generated Laurent ideals ----------------------------

def _reduce_mod(f: LaurentPoly, ell: int) -> list[int]:
    dense = P.mod_p(f.normalized()[1], ell)
    while dense and dense[0] == 0:
        dense.pop(0)
    return dense


@dataclass
class PrincipalityVerdict:
    principal: bool
    generator: LaurentPoly | None = None
    resultant: int | None = None
    prime: int | None = None
    common_factor: list[int] | None = None
    bezout: dict[int, tuple[list[int], list[int], int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": "PRINCIPAL" if self.principal else "NON-PRINCIPAL",
            "generator": None if self.generator is None else self.generator.to_json(),
            "resultant": self.resultant,
            "prime": self.prime,
            "common_factor_mod_prime": self.common_factor,
            "bezout": {str(k): {"u": u, "v": v, "shift": s} for k, (u, v, s) in self.bezout.items()},
        }


def laurent_ideal_principality(a: LaurentPoly, b: LaurentPoly) -> PrincipalityVerdict:
    """Decide whether the ideal ``(a, b)`` of Z[t, t^-1] is principal.

    With ``d = gcd(a, b)`` the ideal is ``d (a/d, b/d)``, so it is principal
    exactly when the coprime pair ``(a/d, b/d)`` generates the unit ideal.
    That pair's ideal contains their resultant ``R != 0``; it is the unit
    ideal iff, for every prime ``l | R``, the reductions mod ``l`` are coprime
    in F_l[t, t^-1].
    """
    from sympy import primefactors

    from .laurent import laurent_gcd

    if a.is_zero() or b.is_zero():
        raise MalformedInputError("ideal generators must be nonzero")
    d = laurent_gcd(a, b)
    a1, b1 = a.exact_div(d), b.exact_div(d)
    R = resultant(a1, b1)
    verdict = PrincipalityVerdict(True, d, R)
    for ell in primefactors(abs(R)):
        ell = int(ell)
        ra, rb = _reduce_mod(a1, ell), _reduce_mod(b1, ell)
        g, u, v = P.xgcd_p(ra, rb, ell)
        if P.deg(g) > 0:
            return PrincipalityVerdict(False, None, R, ell, g)
        # u*ra + v*rb = 1 in F_l[t]; record the shift back to Laurent form
        verdict.bezout[ell] = (u, v, 0)
    return verdict


def generates_unit_ideal(a: LaurentPoly, b: LaurentPoly) -> bool:
    v = laurent_ideal_principality(a, b)
    return v.principal and v.generator.is_unit()


def verify_principality_certificate(a: LaurentPoly, b: LaurentPoly, v: PrincipalityVerdict) -> bool:
    """Independent re-check of a verdict by direct multiplication."""
    if v.principal:
        d = v.generator
        a1, b1 = a.exact_div(d), b.exact_div(d)
        if a1 is None or b1 is None:
            return False
        for ell, (u, w, _) in v.bezout.items():
            ra, rb = _reduce_mod(a1, ell), _reduce_mod(b1, ell)
            if P.add_p(P.mul_p(u, ra, ell), P.mul_p(w, rb, ell), ell) != [1]:
                return False
        from sympy import primefactors
        return set(v.bezout) == {int(p) for p in primefactors(abs(v.resultant))}
    ell, q = v.prime, v.common_factor
    if P.deg(q) < 1:
        return False
    for f in (a, b):
        rf = _reduce_mod(f, ell)
        if rf and P.divmod_p(rf, q, ell)[1]:
            return False
    return True


def cyclotomic_norm_via_resultant(x: CyclotomicElement) -> int:
    return abs(resultant(x.as_laurent(), cyclotomic_poly(x.p)))


__all__ = [
    "CyclotomicElement", "IdealLattice", "QuadraticElement", "PrincipalityVerdict",
    "cyclotomic_poly", "gaussian_period", "period_lift", "eval_p_of_zeta",
    "ideal_from_generators", "ideal_norm", "ideal_mul", "ring_module", "ideal_module",
    "inclusion_map", "multiplication_into", "quadratic_class_check", "laurent_ideal_principality",
    "generates_unit_ideal", "verify_principality_certificate", "cyclotomic_norm_via_resultant",
    "augmentation",
]
