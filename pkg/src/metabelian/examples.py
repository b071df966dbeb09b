"""Named example groups and para-equivalence certificates, built in code."""
from __future__ import annotations

from functools import lru_cache

from .cyclotomic import (
    CyclotomicElement,
    IdealLattice,
    eval_p_of_zeta,
    gaussian_period,
    ideal_from_generators,
    inclusion_map,
    multiplication_into,
    period_lift,
)
from .errors import MalformedInputError
from .groups import ParaCertificate, SplitMetabelianGroup
from .laurent import T, LaurentPoly
from .modules import CoprimeIdeal, CyclicModule, FreePresented, LatticeModule, ModuleMap
from . import cyclotomic as cy

WREATH_A = 2 * T - 1
WREATH_B = 2 - T
CYCLO_P = 23


def gamma_n(n: int) -> SplitMetabelianGroup:
    """``Z[1/n] x| Z`` with ``t`` acting as multiplication by ``n``, i.e. ``Z[t,t^-1]/(t - n)``."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise MalformedInputError("n must be an integer")
    return SplitMetabelianGroup(CyclicModule(T - n), f"gamma-n(n={n})")


def wreath() -> SplitMetabelianGroup:
    """``Z wr Z``: the free module of rank one."""
    return SplitMetabelianGroup(FreePresented(1, ()), "wreath")


def wreath_ideal() -> SplitMetabelianGroup:
    """The ideal ``(2t - 1, 2 - t)`` as a module."""
    return SplitMetabelianGroup(CoprimeIdeal(WREATH_A, WREATH_B), "wreath-ideal")


def klein_bottle() -> SplitMetabelianGroup:
    return SplitMetabelianGroup(LatticeModule(((-1,),)), "klein-bottle")


@lru_cache(maxsize=None)
def cyclotomic_ideal_lattice(p: int = CYCLO_P) -> IdealLattice:
    """The ideal ``(2, 1 + P)`` of ``Z[zeta_p]``."""
    one_plus_period = gaussian_period(p) + 1
    return ideal_from_generators([CyclotomicElement.integer(p, 2), one_plus_period])


def cyclotomic23() -> SplitMetabelianGroup:
    return SplitMetabelianGroup(cy.ring_module(CYCLO_P), "cyclotomic23")


def cyclotomic23_ideal() -> SplitMetabelianGroup:
    return SplitMetabelianGroup(cy.ideal_module(cyclotomic_ideal_lattice()), "cyclotomic23-ideal")


def wreath_certificate() -> ParaCertificate:
    """``f``: ideal into the ring, ``g``: ``1 -> 2t - 1``; both composites are ``2t - 1``."""
    A = CoprimeIdeal(WREATH_A, WREATH_B)
    R = FreePresented(1, ())
    f = A.embedding()
    g = ModuleMap(R, A, [[LaurentPoly.const(1)], [LaurentPoly()]])
    return ParaCertificate(f, g, WREATH_A, WREATH_A)


@lru_cache(maxsize=None)
def alpha_map() -> ModuleMap:
    """``alpha: Z[zeta] -> (2, 1 + P)`` with ``alpha(1) = 2(1 + P) = p(zeta)``."""
    return multiplication_into(cyclotomic_ideal_lattice(), eval_p_of_zeta(CYCLO_P))


def cyclotomic_certificate() -> ParaCertificate:
    s = period_lift(CYCLO_P)
    return ParaCertificate(alpha_map(), inclusion_map(cyclotomic_ideal_lattice()), s, s)


GROUPS = {
    "gamma-n": gamma_n,
    "wreath": wreath,
    "wreath-ideal": wreath_ideal,
    "cyclotomic23": cyclotomic23,
    "cyclotomic23-ideal": cyclotomic23_ideal,
    "klein-bottle": klein_bottle,
}

CERTIFICATES = {
    "wreath": wreath_certificate,
    "wreath-ideal": wreath_certificate,
    "cyclotomic23": cyclotomic_certificate,
    "cyclotomic23-ideal": cyclotomic_certificate,
}


def example_group(name: str, n: int | None = None) -> SplitMetabelianGroup:
    if name not in GROUPS:
        raise MalformedInputError(f"unknown example {name!r}; choose from {', '.join(GROUPS)}")
    if name == "gamma-n":
        if n is None:
            raise MalformedInputError("gamma-n needs --n")
        return gamma_n(n)
    return GROUPS[name]()


def example_certificate(name: str) -> ParaCertificate:
    if name not in CERTIFICATES:
        raise MalformedInputError(f"no certificate for {name!r}; choose from {', '.join(CERTIFICATES)}")
    return CERTIFICATES[name]()
