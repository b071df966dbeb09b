import random

import pytest
from hypothesis import given, settings, strategies as st

from metabelian.cyclotomic import (
    CyclotomicElement,
    IdealLattice,
    QuadraticElement,
    cyclotomic_norm_via_resultant,
    eval_p_of_zeta,
    gaussian_period,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    laurent_ideal_principality,
    norm_form_solutions,
    period_lift,
    quadratic_class_check,
    quadratic_ideal,
    quadratic_ideal_mul,
    verify_principality_certificate,
)
from metabelian.errors import MalformedInputError
from metabelian.examples import cyclotomic_ideal_lattice
from metabelian.laurent import LaurentPoly, T, augmentation


def elements(p):
    return st.lists(st.integers(-5, 5), min_size=p - 1, max_size=p - 1).map(
        lambda c: CyclotomicElement(p, tuple(c)))


@pytest.mark.parametrize("p", [5, 7, 23])
def test_reduction_identities(p):
    z = CyclotomicElement.zeta(p)
    assert z ** p == CyclotomicElement.one(p)
    assert sum((z ** k for k in range(p)), CyclotomicElement.integer(p, 0)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 23]).flatmap(lambda p: st.tuples(elements(p), elements(p), elements(p))))
def test_ring_laws(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_period_identity(p):
    P = gaussian_period(p)
    assert (2 * P + 1) * (2 * P + 1) == CyclotomicElement.integer(p, -p)
    assert (P * P + P + (p + 1) // 4).is_zero()


def test_period_23_exponents():
    P = gaussian_period(23)
    expected = {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18}
    assert P == CyclotomicElement.from_exponents(23, {e: 1 for e in expected})
    with pytest.raises(MalformedInputError):
        gaussian_period(13)


def test_p_of_zeta():
    s = eval_p_of_zeta()
    P = gaussian_period(23)
    assert augmentation(period_lift()) == 1
    assert s == 2 + 2 * P
    assert (s - 1) * (s - 1) == CyclotomicElement.integer(23, -23)


def test_ideal_norms():
    L = cyclotomic_ideal_lattice()
    assert L.is_zeta_closed()
    assert ideal_norm(L) == 2 ** 11
    assert ideal_norm(ideal_from_generators([CyclotomicElement.one(23)])) == 1
    s = eval_p_of_zeta()
    assert ideal_norm(ideal_from_generators([s])) == 24 ** 11 == cyclotomic_norm_via_resultant(s)
    L2 = ideal_mul(L, L)
    assert L2.is_zeta_closed() and ideal_norm(L2) == 2 ** 22
    assert ideal_norm(ideal_mul(L2, L)) == 2 ** 33
    assert ideal_mul(L, ideal_from_generators([CyclotomicElement.one(23)])) == L
    assert IdealLattice.from_json(L.to_json()) == L
    with pytest.raises(MalformedInputError):
        ideal_from_generators([CyclotomicElement.integer(23, 0)])


@settings(max_examples=30, deadline=None)
@given(elements(7))
def test_norm_equals_resultant(x):
    if x.is_zero():
        return
    assert x.norm() == cyclotomic_norm_via_resultant(x)
    assert ideal_norm(ideal_from_generators([x])) == x.norm()


def test_norm_multiplicative_on_coprime_ideals():
    p = 7
    I = ideal_from_generators([CyclotomicElement.integer(p, 2)])
    J = ideal_from_generators([CyclotomicElement.integer(p, 3) + CyclotomicElement.zeta(p)])
    assert ideal_norm(ideal_mul(I, J)) == ideal_norm(I) * ideal_norm(J)


def test_quadratic_arithmetic():
    w = QuadraticElement(1, 1)
    assert w * w == QuadraticElement.from_omega(-6, 1)  # w^2 = w - 6
    assert QuadraticElement(3, 1).norm() == 8
    with pytest.raises(MalformedInputError):
        QuadraticElement(1, 2)
    assert norm_form_solutions(2) == []
    assert sorted((g.a, g.b) for g in norm_form_solutions(8)) == [(-3, -1), (-3, 1), (3, -1), (3, 1)]


def test_quadratic_class_check():
    r = quadratic_class_check()
    assert r["checked"] == "exhaustive"
    assert r["cyclotomic_class_group"]["checked"] == "assumed-from-literature"
    assert r["ideal"]["norm"] == 2 and not r["a_principal"]
    assert not r["a2"]["principal"] and not r["a2"]["equals_(2)"]
    assert r["a3"]["principal"] and r["a3"]["norm"] == 8


def test_cube_generator_is_the_conjugate_of_1_plus_omega():
    a = quadratic_ideal([QuadraticElement(4, 0), QuadraticElement(1, 1)])
    a3 = quadratic_ideal_mul(quadratic_ideal_mul(a, a), a)
    assert a3 == quadratic_ideal([QuadraticElement(3, -1)])
    assert a3 != quadratic_ideal([QuadraticElement(3, 1)])
    abar = quadratic_ideal([QuadraticElement(4, 0), QuadraticElement(1, -1)])
    abar3 = quadratic_ideal_mul(quadratic_ideal_mul(abar, abar), abar)
    assert abar3 == quadratic_ideal([QuadraticElement(3, 1)])
    assert quadratic_ideal_mul(a, abar) == quadratic_ideal([QuadraticElement(4, 0)])


def test_principality_examples():
    a, b = 2 * T - 1, 2 - T
    v = laurent_ideal_principality(a, b)
    assert not v.principal and v.prime == 3 and abs(v.resultant) == 3
    assert v.common_factor == [1, 1]  # t + 1 = t - 2 mod 3
    assert verify_principality_certificate(a, b, v)
    v = laurent_ideal_principality(a * (T - 1), b * (T - 1))
    assert not v.principal and v.prime == 3
    v = laurent_ideal_principality(LaurentPoly.const(2), 2 * T)
    assert v.principal and v.generator == 2
    v = laurent_ideal_principality(T, 3 * T)
    assert v.principal and v.generator.is_unit()
    v = laurent_ideal_principality(LaurentPoly.const(2), T + 1)
    assert not v.principal and v.prime == 2
    with pytest.raises(MalformedInputError):
        laurent_ideal_principality(LaurentPoly(), T)


def _rand_poly(rng):
    return LaurentPoly({rng.randint(-1, 3): rng.randint(-4, 4) for _ in range(rng.randint(1, 3))})


def test_principality_certificates_are_sound():
    rng = random.Random(9)
    for _ in range(150):
        a, b = _rand_poly(rng), _rand_poly(rng)
        if a.is_zero() or b.is_zero():
            continue
        v = laurent_ideal_principality(a, b)
        assert verify_principality_certificate(a, b, v)
        if v.principal:
            assert a.exact_div(v.generator) is not None and b.exact_div(v.generator) is not None
