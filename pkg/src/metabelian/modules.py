"""Modules over Z[t, t^-1] and their I-adic filtrations.

Three presentation classes are supported:

* :class:`FreePresented` -- cokernel of a Laurent relation matrix
  (:class:`CyclicModule` is the one-generator, one-relation case);
* :class:`CoprimeIdeal` -- the ideal ``(a, b)`` of a coprime pair, presented
  by two generators and the syzygy ``b e1 - a e2``;
* :class:`LatticeModule` -- ``Z^r`` with ``t`` acting by a unimodular matrix
  ``T`` on column vectors.

``I`` is the augmentation ideal, generated by ``u = t - 1``.  Quotients
``M / M I^n`` are computed by substituting ``t = 1 + u`` and truncating
modulo ``u^n`` (presented classes) or directly as ``coker (T - 1)^n``
(lattice class).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from .errors import IllDefinedMapError, MalformedInputError, UnsupportedModuleError
from .laurent import LaurentPoly, ONE, ZERO, eval_matrix, factor_integer_poly, laurent_gcd, truncate
from .linalg import FgAbelianGroup, IntMatrix, Presentation

DEFAULT_EQUALITY_DEPTH = 12

LaurentMatrix = list[list[LaurentPoly]]


class LaurentModule:
    kind: str = ""

    @property
    def generators(self) -> int:
        raise NotImplementedError

    def relation_columns(self) -> list[list[LaurentPoly]]:
        """Relations as columns of length ``generators``."""
        raise NotImplementedError

    def iadic_presentation(self, n: int) -> Presentation:
        """Presentation of ``M / M I^n`` as an abelian group."""
        if n < 1:
            raise ValueError("depth must be >= 1")
        k = self.generators
        cols = []
        for rel in self.relation_columns():
            trunc = [truncate(p, n).coords for p in rel]
            for shift in range(n):
                col = []
                for coords in trunc:
                    col.extend([0] * shift + list(coords[:n - shift]))
                cols.append(col)
        return Presentation(k * n, la.transpose(cols, k * n) if cols else [])

    def layer_generators(self, n: int) -> IntMatrix:
        """Columns generating ``M I^(n-1) / M I^n`` inside ``iadic_presentation(n)``."""
        k = self.generators
        W = la.zeros(k * n, k)
        for i in range(k):
            W[i * n + n - 1][i] = 1
        return W

    def project_matrix(self, n: int) -> IntMatrix:
        """Canonical surjection ``M/MI^n -> M/MI^(n-1)`` on presentation generators."""
        k = self.generators
        out = la.zeros(k * (n - 1), k * n)
        for i in range(k):
            for a in range(n - 1):
                out[i * (n - 1) + a][i * n + a] = 1
        return out

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class FreePresented(LaurentModule):
    """``Z[t,t^-1]^k / (column span of relations)``."""

    rank: int
    relations: tuple[tuple[LaurentPoly, ...], ...] = ()
    kind = "free"

    def __post_init__(self):
        if self.rank < 0:
            raise MalformedInputError("generator count must be nonnegative")
        rels = tuple(tuple(LaurentPoly.coerce(p) for p in col) for col in self.relations)
        if any(len(col) != self.rank for col in rels):
            raise MalformedInputError("each relation column needs one entry per generator")
        object.__setattr__(self, "relations", rels)

    @property
    def generators(self) -> int:
        return self.rank

    def relation_columns(self):
        return [list(col) for col in self.relations]

    def to_json(self) -> dict:
        return {"kind": "free", "generators": self.rank,
                "relations": [[p.to_json() for p in col] for col in self.relations]}


class CyclicModule(FreePresented):
    """``Z[t,t^-1] / (f)``."""

    kind = "cyclic"

    def __init__(self, f: LaurentPoly):
        super().__init__(1, ((LaurentPoly.coerce(f),),))

    @property
    def f(self) -> LaurentPoly:
        return self.relations[0][0]

    def to_json(self) -> dict:
        return {"kind": "cyclic", "relation": self.f.to_json()}

    def __repr__(self):
        return f"CyclicModule({self.f})"


class CoprimeIdeal(FreePresented):
    """The ideal ``(a, b)`` of Z[t,t^-1] for ``gcd(a, b) = 1``, as ``<e1, e2 | b e1 - a e2>``.

    ``e1`` and ``e2`` correspond to ``a`` and ``b``.
    """

    kind = "ideal"

    def __init__(self, a: LaurentPoly, b: LaurentPoly):
        a, b = LaurentPoly.coerce(a), LaurentPoly.coerce(b)
        if a.is_zero() or b.is_zero():
            raise MalformedInputError("ideal generators must be nonzero")
        g = laurent_gcd(a, b)
        if not g.is_unit():
            raise MalformedInputError(f"generators are not coprime: gcd = {g}")
        super().__init__(2, ((b, -a),))

    @property
    def a(self) -> LaurentPoly:
        return -self.relations[0][1]

    @property
    def b(self) -> LaurentPoly:
        return self.relations[0][0]

    def embedding(self) -> "ModuleMap":
        """The inclusion into the free module of rank one."""
        return ModuleMap(self, FreePresented(1), [[self.a, self.b]])

    def to_json(self) -> dict:
        return {"kind": "ideal", "generators": [self.a.to_json(), self.b.to_json()]}

    def __repr__(self):
        return f"CoprimeIdeal({self.a}, {self.b})"


@dataclass(frozen=True, eq=False)
class LatticeModule(LaurentModule):
    """``Z^r`` with ``t`` acting by the unimodular matrix ``action``."""

    action: tuple[tuple[int, ...], ...]
    kind = "lattice"
    _inverse: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        T = tuple(tuple(int(x) for x in row) for row in self.action)
        if any(len(row) != len(T) for row in T):
            raise MalformedInputError("action matrix must be square")
        if abs(la.det_bareiss(T)) != 1:
            raise MalformedInputError("action matrix must be invertible over the integers")
        object.__setattr__(self, "action", T)
        inv = la.inverse_unimodular(T) if T else []
        object.__setattr__(self, "_inverse", tuple(map(tuple, inv)))

    def __eq__(self, other):
        return isinstance(other, LatticeModule) and self.action == other.action

    def __hash__(self):
        return hash(self.action)

    @property
    def rank(self) -> int:
        return len(self.action)

    @property
    def generators(self) -> int:
        return self.rank

    @property
    def T(self) -> IntMatrix:
        return [list(r) for r in self.action]

    @property
    def T_inv(self) -> IntMatrix:
        return [list(r) for r in self._inverse]

    def relation_columns(self):
        # column j: t e_j - T e_j
        r = self.rank
        cols = []
        for j in range(r):
            col = [LaurentPoly.const(-self.action[i][j]) for i in range(r)]
            col[j] = col[j] + LaurentPoly.t()
            cols.append(col)
        return cols

    def augmentation_power(self, n: int) -> IntMatrix:
        """``(T - 1)^n``."""
        return la.matpow(la.matadd(self.T, la.identity(self.rank), -1), n)

    def iadic_presentation(self, n: int) -> Presentation:
        if n < 1:
            raise ValueError("depth must be >= 1")
        return Presentation(self.rank, self.augmentation_power(n))

    def layer_generators(self, n: int) -> IntMatrix:
        return self.augmentation_power(n - 1)

    def project_matrix(self, n: int) -> IntMatrix:
        return la.identity(self.rank)

    def evaluate(self, p: LaurentPoly) -> IntMatrix:
        return eval_matrix(p, self.T, self.T_inv)

    def to_json(self) -> dict:
        return {"kind": "lattice", "action": [list(r) for r in self.action]}


def module_from_json(data: dict) -> LaurentModule:
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInputError("module description needs a 'kind'")
    kind = data["kind"]
    try:
        if kind == "free":
            rank = int(data["generators"])
            rels = [[LaurentPoly.from_json(p) for p in col] for col in data.get("relations", [])]
            return FreePresented(rank, tuple(map(tuple, rels)))
        if kind == "cyclic":
            return CyclicModule(LaurentPoly.from_json(data["relation"]))
        if kind == "ideal":
            a, b = data["generators"]
            return CoprimeIdeal(LaurentPoly.from_json(a), LaurentPoly.from_json(b))
        if kind == "lattice":
            return LatticeModule(tuple(tuple(r) for r in data["action"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedInputError):
            raise
        raise MalformedInputError(f"bad {kind} module: {exc}") from None
    raise MalformedInputError(f"unknown module kind {kind!r}")


def is_lattice(M: LaurentModule) -> bool:
    return isinstance(M, LatticeModule)


def _relation_membership(target: LaurentModule, v: Sequence[LaurentPoly]) -> bool | None:
    """Exact test of ``v`` in the relation submodule; ``None`` if undecided."""
    rels = target.relation_columns()
    if not rels:
        return all(p.is_zero() for p in v)
    if len(rels) > 1:
        return None
    R = rels[0]
    i = next(i for i, p in enumerate(R) if not p.is_zero())
    c = v[i].exact_div(R[i])
    if c is None:
        return False
    return all(c * r == x for r, x in zip(R, v))


class ModuleMap:
    """A homomorphism ``source -> target``.

    ``matrix`` has one row per target generator and one column per source
    generator: column ``j`` is the image of the ``j``-th source generator.
    Entries are Laurent polynomials between presented modules and integers
    between lattice modules.
    """

    def __init__(self, source: LaurentModule, target: LaurentModule, matrix, *, check: bool = True):
        if is_lattice(source) != is_lattice(target):
            raise UnsupportedModuleError("maps between a lattice module and a presented module are not supported")
        rows, cols = target.generators, source.generators
        if len(matrix) != rows or any(len(r) != cols for r in matrix):
            raise MalformedInputError(f"map matrix must be {rows}x{cols}")
        if is_lattice(source):
            self.matrix = [[int(x) for x in r] for r in matrix]
        else:
            self.matrix = [[LaurentPoly.coerce(x) for x in r] for r in matrix]
        self.source = source
        self.target = target
        self.exactly_checked = False
        if check:
            self.check_well_defined()

    def check_well_defined(self) -> None:
        """Raise :class:`IllDefinedMapError` when relations are not preserved.

        Exact for lattice targets and targets with at most one relation;
        otherwise deferred to the truncated checks in :func:`induced_iadic_map`.
        """
        if is_lattice(self.source):
            lhs = la.matmul(self.matrix, self.source.T)
            rhs = la.matmul(self.target.T, self.matrix)
            if lhs != rhs:
                raise IllDefinedMapError("map does not commute with the action of t")
            self.exactly_checked = True
            return
        verdicts = []
        for rel in self.source.relation_columns():
            image = [sum((self.matrix[i][j] * rel[j] for j in range(len(rel))), ZERO)
                     for i in range(self.target.generators)]
            verdicts.append(_relation_membership(self.target, image))
        if any(v is False for v in verdicts):
            raise IllDefinedMapError("map does not carry relations into relations")
        self.exactly_checked = all(v is True for v in verdicts)

    @classmethod
    def identity(cls, M: LaurentModule) -> "ModuleMap":
        return cls.multiplication(M, ONE)

    @classmethod
    def multiplication(cls, M: LaurentModule, s: LaurentPoly) -> "ModuleMap":
        s = LaurentPoly.coerce(s)
        if is_lattice(M):
            return cls(M, M, M.evaluate(s))
        k = M.generators
        return cls(M, M, [[s if i == j else ZERO for j in range(k)] for i in range(k)])

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """``self o inner`` (apply ``inner`` first)."""
        if inner.target != self.source:
            raise MalformedInputError("maps are not composable")
        if is_lattice(self.source):
            mat = la.matmul(self.matrix, inner.matrix)
        else:
            mat = [[sum((self.matrix[i][k] * inner.matrix[k][j] for k in range(self.source.generators)), ZERO)
                    for j in range(inner.source.generators)] for i in range(self.target.generators)]
        return ModuleMap(inner.source, self.target, mat, check=False)

    __matmul__ = compose

    def iadic_matrix(self, n: int) -> IntMatrix:
        """Matrix of the induced map between ``iadic_presentation(n)`` generators."""
        if is_lattice(self.source):
            return [list(r) for r in self.matrix]
        ks, kt = self.source.generators, self.target.generators
        out = la.zeros(kt * n, ks * n)
        for i in range(kt):
            for j in range(ks):
                block = truncate(self.matrix[i][j], n).multiplication_matrix()
                for a in range(n):
                    out[i * n + a][j * n:(j + 1) * n] = block[a]
        return out

    def to_json(self) -> dict:
        if is_lattice(self.source):
            mat = [list(r) for r in self.matrix]
        else:
            mat = [[p.to_json() for p in r] for r in self.matrix]
        return {"source": self.source.to_json(), "target": self.target.to_json(), "matrix": mat}

    @classmethod
    def from_json(cls, data: dict) -> "ModuleMap":
        try:
            src = module_from_json(data["source"])
            tgt = module_from_json(data["target"])
            raw = data["matrix"]
            if is_lattice(src):
                mat = [[int(x) for x in r] for r in raw]
            else:
                mat = [[LaurentPoly.from_json(p) for p in r] for r in raw]
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad module map: {exc}") from None
        return cls(src, tgt, mat)

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


# -- I-adic quotients -----------------------------------------------------

def iadic_quotient(M: LaurentModule, n: int) -> FgAbelianGroup:
    """``M / M I^n`` in invariant-factor form."""
    gens, rels = M.iadic_presentation(n)
    return la.cokernel(rels, gens)


def iadic_layer(M: LaurentModule, n: int) -> FgAbelianGroup:
    """``M I^(n-1) / M I^n`` (for ``n >= 1``; ``n = 1`` gives ``M / M I``)."""
    if n == 1:
        return iadic_quotient(M, 1)
    gens, rels = M.iadic_presentation(n)
    return la.subgroup_of_cokernel(rels, M.layer_generators(n), gens)


@dataclass(frozen=True)
class InducedMap:
    depth: int
    matrix: IntMatrix
    source: Presentation
    target: Presentation
    is_iso: bool


def induced_iadic_map(phi: ModuleMap, n: int) -> InducedMap:
    """The map ``M/MI^n -> N/NI^n`` induced by ``phi`` and whether it is an isomorphism."""
    src = phi.source.iadic_presentation(n)
    tgt = phi.target.iadic_presentation(n)
    mat = phi.iadic_matrix(n)
    iso = la.quotient_map_is_iso(src, tgt, mat)
    return InducedMap(n, mat, src, tgt, iso)


# -- equality modulo relations ------------------------------------------

class MapEquality(enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    EQUAL_TO_DEPTH = "equal-to-depth"

    @property
    def exact(self) -> bool:
        return self is MapEquality.EQUAL


def map_equal(phi: ModuleMap, psi: ModuleMap, depth: int = DEFAULT_EQUALITY_DEPTH) -> MapEquality:
    """Compare two maps modulo the relations of their common target.

    ``EQUAL_TO_DEPTH`` means the difference vanishes on ``M/MI^depth`` but
    could not be decided exactly (targets with several relations).
    """
    if phi.source != psi.source or phi.target != psi.target:
        raise MalformedInputError("maps have different sources or targets")
    if is_lattice(phi.source):
        return MapEquality.EQUAL if phi.matrix == psi.matrix else MapEquality.UNEQUAL
    target = phi.target
    diff_cols = [[phi.matrix[i][j] - psi.matrix[i][j] for i in range(target.generators)]
                 for j in range(phi.source.generators)]
    verdicts = [_relation_membership(target, col) for col in diff_cols]
    if any(v is False for v in verdicts):
        return MapEquality.UNEQUAL
    if all(v is True for v in verdicts):
        return MapEquality.EQUAL
    gens, rels = target.iadic_presentation(depth)
    diff = la.matadd(phi.iadic_matrix(depth), psi.iadic_matrix(depth), -1)
    if la.columns_in_span(rels, diff, gens):
        return MapEquality.EQUAL_TO_DEPTH
    return MapEquality.UNEQUAL


# -- residual nilpotence --------------------------------------------------

@dataclass(frozen=True)
class ResidualNilpotenceVerdict:
    residually_nilpotent: bool
    witness: LaurentPoly | None = None

    def __post_init__(self):
        if (self.witness is None) != self.residually_nilpotent:
            raise ValueError("a witness is present exactly when the verdict is negative")

    def to_json(self) -> dict:
        return {"residually_nilpotent": self.residually_nilpotent,
                "witness": None if self.witness is None else self.witness.to_json(),
                "witness_str": None if self.witness is None else str(self.witness)}


def characteristic_polynomial(T: Sequence[Sequence[int]]) -> LaurentPoly:
    """``det(t I - T)`` via Faddeev-LeVerrier (all divisions exact)."""
    n = len(T)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = la.zeros(n, n)
    for k in range(1, n + 1):
        M = la.matmul(T, M) if k > 1 else la.zeros(n, n)
        for i in range(n):
            M[i][i] += coeffs[n - k + 1]
        AM = la.matmul(T, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) // k
    return LaurentPoly.from_coeffs(coeffs)


def _s_torsion_witness(f: LaurentPoly) -> LaurentPoly | None:
    _, factors = factor_integer_poly(f)
    for q, _mult in factors:
        if abs(q(1)) == 1:
            return q
    return None


def residually_nilpotent(M: LaurentModule) -> ResidualNilpotenceVerdict:
    """Decide whether ``M I^n`` intersects to zero.

    The intersection is the S-torsion submodule.  It is nonzero exactly when
    the defining polynomial (relation of a cyclic module, characteristic
    polynomial of a lattice action) has an irreducible factor ``q`` with
    ``|q(1)| = 1``; that factor is returned as the witness.
    """
    if isinstance(M, CoprimeIdeal):
        return ResidualNilpotenceVerdict(True)
    if isinstance(M, LatticeModule):
        if M.rank == 0:
            return ResidualNilpotenceVerdict(True)
        w = _s_torsion_witness(characteristic_polynomial(M.T))
        return ResidualNilpotenceVerdict(w is None, w)
    if isinstance(M, FreePresented):
        rels = [col for col in M.relations if any(not p.is_zero() for p in col)]
        if not rels:
            return ResidualNilpotenceVerdict(True)
        if M.rank == 1 and len(rels) == 1:
            w = _s_torsion_witness(rels[0][0])
            return ResidualNilpotenceVerdict(w is None, w)
    raise UnsupportedModuleError(
        "residual nilpotence is only decided for free, cyclic, coprime-ideal and lattice modules")


@dataclass(frozen=True)
class StableLattice:
    """Sublattice of ``Z^ambient`` given by an HNF row basis."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def group(self) -> FgAbelianGroup:
        return FgAbelianGroup(self.rank)


def _meet_kernel(basis: IntMatrix, Q: IntMatrix, ambient: int) -> IntMatrix:
    # {x in span(basis) : Q x = 0} as an HNF row basis
    if not basis:
        return []
    QB = la.matmul(Q, la.transpose(basis))
    coeffs = la.integer_kernel(QB, len(basis))
    vecs = [la.matvec(la.transpose(basis), c) for c in coeffs]
    return la.hnf_basis(vecs, ambient)


def gamma_omega_bruteforce(M: LaurentModule, k_max: int = 20) -> StableLattice:
    """Independent estimate of ``intersection_k image((T - 1)^k)`` for a lattice module.

    The rational space splits into generalized eigenspaces ``E_q`` of the
    irreducible factors ``q`` of the characteristic polynomial (factored by
    sympy, not by this package).  ``E_q`` is kept when the chain
    ``E_q ∩ image((T-1)^k)`` has stopped shrinking over the last three
    steps up to ``k_max``; the result is the sum of kept spaces met with
    ``image((T-1)^k_max)``.
    """
    if not isinstance(M, LatticeModule):
        raise UnsupportedModuleError("brute-force intersection is only defined for lattice modules")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    import sympy

    r = M.rank
    if r == 0:
        return StableLattice(0, ())

    def image(k):
        return la.hnf_basis(la.transpose(M.augmentation_power(k)), r)

    window = [image(k) for k in range(max(1, k_max - 2), k_max + 1)]
    x = sympy.Symbol("x")
    chi = characteristic_polynomial(M.T)
    _, dense = chi.normalized()
    _, factors = sympy.factor_list(sympy.Poly(list(reversed(dense)), x))
    kept = []
    for q, mult in factors:
        qc = [int(c) for c in reversed(q.all_coeffs())]
        Q = la.matpow(eval_matrix(LaurentPoly.from_coeffs(qc), M.T, M.T_inv), mult)
        chain = [_meet_kernel(b, Q, r) for b in window]
        if chain[-1] and all(c == chain[-1] for c in chain):
            kept.append(Q)
    if not kept:
        return StableLattice(r, ())
    prod = la.identity(r)
    for Q in kept:
        prod = la.matmul(prod, Q)
    stable = _meet_kernel(window[-1], prod, r)
    return StableLattice(r, tuple(map(tuple, stable)))
