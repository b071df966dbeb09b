"""Split metabelian groups ``G = M x| Z`` and their lower central series.

The generator of ``Z`` acts on ``M`` as ``t``.  Then ``[G, G] = M I`` and
``gamma_k(G) = M I^(k-1)`` for ``k >= 2``, so

* ``G / gamma_2 = Z + M/MI``,
* ``G / gamma_(k+1) = Z + M/MI^k`` (as abelian-group data of the torsion and
  free parts of the module side; the group itself is not abelian),
* ``gamma_k / gamma_(k+1) = MI^(k-1) / MI^k``.

Homomorphisms are represented by their module component and act as the
identity on the ``Z`` quotient.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import linalg as la
from .errors import IllDefinedMapError, MalformedInputError, NotInSError, UnsupportedModuleError
from .laurent import LaurentPoly, augmentation, in_S, resultant
from .linalg import FgAbelianGroup
from .modules import (
    CoprimeIdeal,
    CyclicModule,
    FreePresented,
    LatticeModule,
    LaurentModule,
    MapEquality,
    ModuleMap,
    induced_iadic_map,
    iadic_layer,
    iadic_quotient,
    map_equal,
    module_from_json,
)

Z = FgAbelianGroup(1)


@dataclass(frozen=True)
class SplitMetabelianGroup:
    module: LaurentModule
    label: str = ""

    def to_json(self) -> dict:
        return {"module": self.module.to_json(), "label": self.label}

    @classmethod
    def from_json(cls, data: dict) -> "SplitMetabelianGroup":
        if not isinstance(data, dict) or "module" not in data:
            raise MalformedInputError("group description needs a 'module'")
        return cls(module_from_json(data["module"]), str(data.get("label", "")))


def gamma_quotient(G: SplitMetabelianGroup, k: int) -> FgAbelianGroup:
    """``gamma_k(G) / gamma_(k+1)(G)``; for ``k = 1`` this is ``G_ab = Z + M/MI``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return Z + iadic_quotient(G.module, 1)
    return iadic_layer(G.module, k)


@dataclass(frozen=True)
class QuotientRow:
    k: int
    upper: FgAbelianGroup   # G / gamma_(k+1), reported as Z + M/MI^k
    layer: FgAbelianGroup   # gamma_k / gamma_(k+1)

    def to_json(self) -> dict:
        return {"k": self.k, "quotient": self.upper.to_json(), "quotient_str": str(self.upper),
                "layer": self.layer.to_json(), "layer_str": str(self.layer)}


def nilpotent_quotient_table(G: SplitMetabelianGroup, K: int) -> list[QuotientRow]:
    """Rows ``k = 1..K`` with ``G/gamma_(k+1)`` and ``gamma_k/gamma_(k+1)``."""
    if K < 1:
        raise ValueError("depth must be >= 1")
    return [QuotientRow(k, Z + iadic_quotient(G.module, k), gamma_quotient(G, k))
            for k in range(1, K + 1)]


# -- telescopes -------------------------------------------------------------

@dataclass(frozen=True)
class TelescopeStage:
    index: int
    multiplier: LaurentPoly
    injective: bool
    proper: bool
    iso: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return self.injective and all(self.iso)

    def to_json(self) -> dict:
        return {"stage": self.index, "multiplier": self.multiplier.to_json(),
                "injective": self.injective, "proper": self.proper, "iso": list(self.iso)}


@dataclass(frozen=True)
class TelescopeReport:
    s: LaurentPoly
    depth: int
    stages: tuple[TelescopeStage, ...]

    @property
    def passed(self) -> bool:
        return all(st.passed for st in self.stages)

    @property
    def all_proper(self) -> bool:
        return all(st.proper for st in self.stages)

    def to_json(self) -> dict:
        return {"s": self.s.to_json(), "depth": self.depth, "passed": self.passed,
                "all_proper": self.all_proper, "stages": [st.to_json() for st in self.stages]}


def multiplication_injective(M: LaurentModule, s: LaurentPoly) -> bool:
    if isinstance(M, LatticeModule):
        return la.det_bareiss(M.evaluate(s)) != 0
    if isinstance(M, CyclicModule):
        f = M.f
        if f.is_zero():
            return not s.is_zero()
        if s.is_zero():
            return False
        # zero divisors of Z[t,t^-1]/(f) are the elements sharing a factor with f
        if resultant(f, s) == 0:
            return False
        return not any(s.content() % p == 0 for p in _primes_of(f.content()))
    if isinstance(M, CoprimeIdeal) or (isinstance(M, FreePresented) and not M.relations):
        return not s.is_zero()
    raise UnsupportedModuleError("injectivity of multiplication is not decided for this module class")


def multiplication_proper(M: LaurentModule, s: LaurentPoly) -> bool:
    """Whether ``M / sM`` is nonzero (the image of multiplication by ``s`` is proper)."""
    if isinstance(M, LatticeModule):
        return abs(la.det_bareiss(M.evaluate(s))) != 1
    if isinstance(M, CyclicModule):
        from .cyclotomic import generates_unit_ideal
        if M.f.is_zero():
            return not s.is_unit()
        return not generates_unit_ideal(M.f, s)
    if isinstance(M, CoprimeIdeal) or (isinstance(M, FreePresented) and not M.relations):
        return M.generators > 0 and not s.is_unit()
    raise UnsupportedModuleError("containment is not decided for this module class")


def _primes_of(n: int) -> list[int]:
    from sympy import primefactors
    return [int(p) for p in primefactors(abs(n))] if abs(n) > 1 else []


def telescope_chain(G: SplitMetabelianGroup, s: LaurentPoly, stages: int, depth: int) -> TelescopeReport:
    """Check the chain ``G ⊂ G_s ⊂ G_(s^2) ⊂ ...``.

    Stage ``i`` is the composite from ``G`` to the ``i``-th copy, i.e.
    multiplication by ``s**i`` on the module.
    """
    s = LaurentPoly.coerce(s)
    if not in_S(s):
        raise NotInSError(f"{s} has augmentation {augmentation(s)}, not 1")
    if stages < 1 or depth < 1:
        raise ValueError("stages and depth must be >= 1")
    M = G.module
    out = []
    for i in range(1, stages + 1):
        si = s ** i
        phi = ModuleMap.multiplication(M, si)
        iso = tuple(induced_iadic_map(phi, n).is_iso for n in range(1, depth + 1))
        out.append(TelescopeStage(i, si, multiplication_injective(M, si), multiplication_proper(M, s), iso))
    return TelescopeReport(s, depth, tuple(out))


# -- para-equivalence certificates -----------------------------------------

@dataclass
class ParaCertificate:
    f: ModuleMap          # M_G -> M_H
    g: ModuleMap          # M_H -> M_G
    s: LaurentPoly        # g o f = s
    s_prime: LaurentPoly  # f o g = s'

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "g": self.g.to_json(),
                "s": self.s.to_json(), "s_prime": self.s_prime.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "ParaCertificate":
        if not isinstance(data, dict):
            raise MalformedInputError("certificate must be an object")
        try:
            return cls(ModuleMap.from_json(data["f"]), ModuleMap.from_json(data["g"]),
                       LaurentPoly.from_json(data["s"]), LaurentPoly.from_json(data["s_prime"]))
        except KeyError as exc:
            raise MalformedInputError(f"certificate is missing {exc}") from None


class ParaStatus(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    CERTIFIED_TO_DEPTH = "CERTIFIED-TO-DEPTH"
    REJECTED = "REJECTED"


@dataclass
class ParaVerdict:
    status: ParaStatus
    checks: dict[str, bool] = field(default_factory=dict)
    failed: list[str] = field(default_factory=list)
    depth_f: list[bool] = field(default_factory=list)
    depth_g: list[bool] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"status": self.status.value, "checks": dict(self.checks), "failed": list(self.failed),
                "iso_f": list(self.depth_f), "iso_g": list(self.depth_g)}


def para_check_depth(phi: ModuleMap, N: int) -> list[bool]:
    """Entry ``k-1`` says whether ``phi`` induces an isomorphism on ``M/MI^k``."""
    return [induced_iadic_map(phi, k).is_iso for k in range(1, N + 1)]


def _surjective_mod_I(phi: ModuleMap) -> bool:
    tgt = phi.target.iadic_presentation(1)
    blocks = [b for b in (phi.iadic_matrix(1), tgt.relations) if b and b[0]]
    if tgt.generators == 0:
        return True
    if not blocks:
        return False
    return la.cokernel(la.hstack(*blocks, rows=tgt.generators), tgt.generators).is_trivial


def verify_para_certificate(cert: ParaCertificate, depth: int = 6) -> ParaVerdict:
    """Check a mutual-embedding certificate ``g o f = s``, ``f o g = s'`` with ``s, s'`` in S.

    Exact composition identities make both composites induce isomorphisms on
    every I-adic quotient, hence so do ``f`` and ``g``.  The induced maps are
    also checked directly up to ``depth``.
    """
    v = ParaVerdict(ParaStatus.REJECTED)

    def record(name, ok):
        v.checks[name] = bool(ok)
        if not ok:
            v.failed.append(name)

    record("s_in_S", in_S(cert.s))
    record("s_prime_in_S", in_S(cert.s_prime))
    if v.failed:
        return v
    f, g = cert.f, cert.g
    if f.target != g.source or g.target != f.source:
        record("maps_composable", False)
        return v
    record("maps_composable", True)
    gf = map_equal(g @ f, ModuleMap.multiplication(f.source, cert.s))
    fg = map_equal(f @ g, ModuleMap.multiplication(f.target, cert.s_prime))
    record("g_after_f_is_s", gf is not MapEquality.UNEQUAL)
    record("f_after_g_is_s_prime", fg is not MapEquality.UNEQUAL)
    if v.failed:
        return v
    exact = gf.exact and fg.exact and f.exactly_checked and g.exactly_checked
    try:
        record("f_onto_mod_I", _surjective_mod_I(f))
        record("g_onto_mod_I", _surjective_mod_I(g))
        v.depth_f = para_check_depth(f, depth)
        v.depth_g = para_check_depth(g, depth)
    except IllDefinedMapError:
        record("maps_well_defined", False)
        return v
    record("f_iso_to_depth", all(v.depth_f))
    record("g_iso_to_depth", all(v.depth_g))
    if not v.failed:
        v.status = ParaStatus.CERTIFIED if exact else ParaStatus.CERTIFIED_TO_DEPTH
    return v


# -- indices ------------------------------------------------------------

def subgroup_index(phi: ModuleMap) -> int:
    """Index of the image of an injective map between lattice modules of equal rank."""
    if not isinstance(phi.source, LatticeModule):
        raise UnsupportedModuleError("subgroup index is only defined for lattice maps")
    if phi.source.rank != phi.target.rank:
        raise MalformedInputError("source and target ranks differ")
    d = la.det_bareiss(phi.matrix)
    if d == 0:
        raise MalformedInputError("map is not injective")
    return abs(d)
