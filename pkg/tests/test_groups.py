import random

import pytest

from metabelian import linalg as la
from metabelian.errors import MalformedInputError, NotInSError
from metabelian.examples import (
    cyclotomic_certificate,
    gamma_n,
    klein_bottle,
    wreath,
    wreath_certificate,
    wreath_ideal,
)
from metabelian.groups import (
    ParaCertificate,
    ParaStatus,
    SplitMetabelianGroup,
    gamma_quotient,
    multiplication_injective,
    multiplication_proper,
    nilpotent_quotient_table,
    para_check_depth,
    subgroup_index,
    telescope_chain,
    verify_para_certificate,
)
from metabelian.laurent import LaurentPoly, T
from metabelian.linalg import FgAbelianGroup
from metabelian.modules import CyclicModule, FreePresented, LatticeModule, ModuleMap


def test_lcq_table_gamma_3():
    rows = nilpotent_quotient_table(gamma_n(3), 4)
    assert [r.upper.torsion for r in rows] == [(2,), (4,), (8,), (16,)]
    assert all(r.upper.free_rank == 1 for r in rows)
    assert gamma_quotient(gamma_n(3), 1) == FgAbelianGroup(1, (2,))
    assert gamma_quotient(gamma_n(3), 3) == FgAbelianGroup(0, (2,))


def test_lcq_table_wreath_and_klein():
    assert [r.upper for r in nilpotent_quotient_table(wreath(), 3)] == [FgAbelianGroup(k + 1) for k in (1, 2, 3)]
    assert [r.upper.torsion for r in nilpotent_quotient_table(klein_bottle(), 3)] == [(2,), (4,), (8,)]
    with pytest.raises(ValueError):
        nilpotent_quotient_table(wreath(), 0)


def test_group_json_roundtrip():
    for G in (gamma_n(5), wreath_ideal(), klein_bottle()):
        assert SplitMetabelianGroup.from_json(G.to_json()) == G
    with pytest.raises(MalformedInputError):
        SplitMetabelianGroup.from_json({"label": "x"})


def test_telescope_wreath():
    rep = telescope_chain(wreath(), 2 * T - 1, 3, 5)
    assert rep.passed and rep.all_proper
    assert [st.multiplier for st in rep.stages] == [(2 * T - 1) ** i for i in (1, 2, 3)]


def test_telescope_gamma_n():
    rep = telescope_chain(gamma_n(3), 2 * T - 1, 3, 5)
    assert rep.passed and rep.all_proper


def test_telescope_trivial_and_rejected():
    assert not telescope_chain(wreath(), LaurentPoly.const(1), 2, 3).all_proper
    assert not telescope_chain(wreath(), T, 2, 3).all_proper
    with pytest.raises(NotInSError):
        telescope_chain(wreath(), LaurentPoly.const(2), 2, 3)


def test_multiplication_predicates():
    M = CyclicModule(T - 3)
    assert multiplication_injective(M, 2 * T - 1)
    assert not multiplication_injective(CyclicModule((T - 3) * (T + 1)), T + 1)
    # 2t - 1 acts on Z[1/3] as 5: proper
    assert multiplication_proper(M, 2 * T - 1)
    # 3t - 2 acts on Z[1/2] (t = 2) as 4, a unit there; on Z[1/3] as 7
    assert not multiplication_proper(CyclicModule(T - 2), 3 * T - 2)
    assert multiplication_proper(M, 3 * T - 2)
    # on the Klein bottle, 2t - 1 acts as -3
    assert multiplication_proper(LatticeModule(((-1,),)), 2 * T - 1)
    assert not multiplication_proper(LatticeModule(((-1,),)), T)


def test_wreath_certificate():
    v = verify_para_certificate(wreath_certificate(), 10)
    assert v.status is ParaStatus.CERTIFIED
    assert v.depth_f == [True] * 10 and v.depth_g == [True] * 10


def test_certificate_json_roundtrip():
    cert = wreath_certificate()
    back = ParaCertificate.from_json(cert.to_json())
    assert back.to_json() == cert.to_json()
    with pytest.raises(MalformedInputError):
        ParaCertificate.from_json({"f": cert.f.to_json()})


def test_tampered_certificate_rejected():
    cert = wreath_certificate()
    bad = ParaCertificate(cert.f, cert.g, LaurentPoly.const(2), cert.s_prime)
    v = verify_para_certificate(bad)
    assert v.status is ParaStatus.REJECTED and v.failed == ["s_in_S"]
    wrong = ParaCertificate(cert.f, cert.g, T ** 2 - T + 1, cert.s_prime)
    v = verify_para_certificate(wrong)
    assert v.status is ParaStatus.REJECTED and "g_after_f_is_s" in v.failed


def test_para_check_depth_examples():
    assert para_check_depth(ModuleMap.multiplication(FreePresented(1), T - 1), 2)[1] is False
    assert para_check_depth(ModuleMap.identity(CyclicModule(T - 3)), 4) == [True] * 4


def test_cyclotomic_certificate_and_indices():
    cert = cyclotomic_certificate()
    assert verify_para_certificate(cert, 6).status is ParaStatus.CERTIFIED
    assert subgroup_index(cert.g) == 2 ** 11
    assert subgroup_index(cert.f) == 12 ** 11
    assert subgroup_index(cert.g @ cert.f) == 24 ** 11


def test_subgroup_index_rules():
    K = LatticeModule(((-1,),))
    assert subgroup_index(ModuleMap.identity(K)) == 1
    with pytest.raises(MalformedInputError):
        subgroup_index(ModuleMap(K, K, [[0]]))
    with pytest.raises(Exception):
        subgroup_index(ModuleMap.identity(FreePresented(1)))


def _random_s(rng):
    # random element of S: 1 + (t - 1) * h
    h = LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(rng.randint(0, 3))})
    return 1 + (T - 1) * h


def test_index_multiplicativity():
    rng = random.Random(11)
    M = LatticeModule(((0, -1), (1, 3)))
    for _ in range(20):
        phi = ModuleMap.multiplication(M, _random_s(rng))
        psi = ModuleMap.multiplication(M, _random_s(rng))
        if la.det_bareiss(phi.matrix) == 0 or la.det_bareiss(psi.matrix) == 0:
            continue
        assert subgroup_index(phi @ psi) == subgroup_index(phi) * subgroup_index(psi)


def test_random_certificates_are_sound():
    # g o f = s, f o g = s on a cyclic module: f = multiplication by s, g = identity
    rng = random.Random(5)
    done = 0
    while done < 25:
        f = LaurentPoly({e: rng.randint(-4, 4) for e in range(rng.randint(1, 3))})
        if f.is_zero() or f.span == 0:
            continue
        M = CyclicModule(f)
        s = _random_s(rng)
        cert = ParaCertificate(ModuleMap.multiplication(M, s), ModuleMap.identity(M), s, s)
        v = verify_para_certificate(cert, 10)
        assert v.status is ParaStatus.CERTIFIED
        assert all(v.depth_f) and all(v.depth_g)
        done += 1
