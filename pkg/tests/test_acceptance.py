"""The eight acceptance criteria, each with its time budget."""
import random
import time

import pytest

from conftest import ACCEPTANCE_RESULTS
from metabelian import linalg as la
from metabelian.cyclotomic import (
    CyclotomicElement,
    QuadraticElement,
    eval_p_of_zeta,
    gaussian_period,
    ideal_norm,
    laurent_ideal_principality,
    period_lift,
    quadratic_class_check,
    quadratic_ideal,
)
from metabelian.examples import (
    cyclotomic_certificate,
    cyclotomic_ideal_lattice,
    gamma_n,
    klein_bottle,
    wreath,
    wreath_certificate,
    wreath_ideal,
)
from metabelian.groups import ParaStatus, para_check_depth, subgroup_index, telescope_chain, verify_para_certificate
from metabelian.laurent import LaurentPoly, T, augmentation
from metabelian.linalg import FgAbelianGroup
from metabelian.modules import (
    CoprimeIdeal,
    CyclicModule,
    FreePresented,
    LatticeModule,
    ModuleMap,
    gamma_omega_bruteforce,
    iadic_layer,
    iadic_quotient,
    induced_iadic_map,
    residually_nilpotent,
)


def record(number, title, budget, run):
    start = time.perf_counter()
    failures = run()
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        failures.append(f"took {elapsed:.2f}s, budget {budget}s")
    verdict = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{verdict}] {title} ({elapsed:.2f}s / {budget}s)"
    if failures:
        line += ": " + "; ".join(failures)
    ACCEPTANCE_RESULTS[number] = line
    print(line)
    assert not failures, line


def cyclic(n):
    return FgAbelianGroup(0, (n,)) if n > 1 else FgAbelianGroup(0)


def check(failures, cond, what):
    if not cond:
        failures.append(what)


# -- 1 --------------------------------------------------------------------

def criterion_1():
    failures = []
    for n in (3, 4, 5, 7):
        M = gamma_n(n).module
        for k in range(2, 9):
            # G / gamma_k = Z + M / M I^(k-1)
            torsion = iadic_quotient(M, k - 1)
            check(failures, torsion == cyclic((n - 1) ** (k - 1)), f"n={n} k={k}: G/gamma_k torsion {torsion}")
            layer = iadic_layer(M, k)
            check(failures, layer == cyclic(n - 1), f"n={n} k={k}: layer {layer}")
    return failures


def test_criterion_1_gamma_n_quotient_orders():
    record(1, "gamma_n quotient orders (n-1)^(k-1)", 1.0, criterion_1)


# -- 2 --------------------------------------------------------------------

def criterion_2():
    failures = []
    v = residually_nilpotent(gamma_n(2).module)
    check(failures, not v.residually_nilpotent and v.witness == T - 2, f"gamma_2 verdict {v}")
    for n in (3, 4, 5, 7):
        check(failures, residually_nilpotent(gamma_n(n).module).residually_nilpotent, f"gamma_{n} not RN")
    check(failures, residually_nilpotent(klein_bottle().module).residually_nilpotent, "Klein bottle not RN")
    return failures


def test_criterion_2_residual_nilpotence_exclusion():
    record(2, "n = 2 exclusion and RN verdicts", 1.0, criterion_2)


# -- 3 --------------------------------------------------------------------

def criterion_3():
    failures = []
    cert = wreath_certificate()
    v = verify_para_certificate(cert, 10)
    check(failures, v.status is ParaStatus.CERTIFIED, f"status {v.status.value}, failed {v.failed}")
    check(failures, para_check_depth(cert.f, 10) == [True] * 10, "f not iso up to 10")
    check(failures, para_check_depth(cert.g, 10) == [True] * 10, "g not iso up to 10")
    for k in range(1, 11):
        for M in (wreath().module, wreath_ideal().module):
            check(failures, iadic_quotient(M, k) == FgAbelianGroup(k), f"{M!r} quotient {k} not Z^{k}")
    a, b = 2 * T - 1, 2 - T
    for x, y in ((a, b), (a * (T - 1), b * (T - 1))):
        r = laurent_ideal_principality(x, y)
        check(failures, not r.principal and r.prime == 3, f"({x}, {y}) verdict {r.to_json()}")
    return failures


def test_criterion_3_wreath_ideal_pair():
    record(3, "wreath/ideal pair certified, ideal non-principal", 5.0, criterion_3)


# -- 4 --------------------------------------------------------------------

def criterion_4():
    failures = []
    p = 23
    P = gaussian_period(p)
    check(failures, (2 * P + 1) * (2 * P + 1) == CyclotomicElement.integer(p, -23), "(2P+1)^2 != -23")
    check(failures, augmentation(period_lift()) == 1, "p(1) != 1")
    s = eval_p_of_zeta()
    check(failures, s == 2 + 2 * P, "p(zeta) != 2 + 2P")
    check(failures, ideal_norm(cyclotomic_ideal_lattice()) == 2048, "norm of (2, 1+P) != 2048")
    cert = cyclotomic_certificate()
    index_alpha, index_incl = subgroup_index(cert.f), subgroup_index(cert.g)
    check(failures, index_alpha == 12 ** 11, f"index of alpha {index_alpha}")
    check(failures, index_incl == 2 ** 11, f"index of inclusion {index_incl}")
    check(failures, 2 ** 11 * 12 ** 11 == s.norm() == QuadraticElement(2, 2).norm() ** 11 == 24 ** 11,
          "norm identity 2^11 12^11 = |N(1 + sqrt(-23))| = 24^11")
    v = verify_para_certificate(cert, 6)
    check(failures, v.status is ParaStatus.CERTIFIED, f"certificate {v.status.value}")
    q = quadratic_class_check()
    check(failures, not q["norm_2_elements"], "norm form 8 soluble")
    check(failures, not q["a2"]["principal"], "a^2 principal")
    stated = quadratic_ideal([QuadraticElement(3, 1)])
    a3 = [tuple(r) for r in q["a3"]["basis"]]
    check(failures, q["a3"]["principal"] and tuple(a3) == stated,
          f"a^3 = ({q['a3']['generator']}), not ((3 + sqrt(-23))/2)")
    return failures


def test_criterion_4_cyclotomic_pair():
    record(4, "cyclotomic pair identities, indices, certificate, class check", 30.0, criterion_4)


# -- 5 --------------------------------------------------------------------

def random_s(rng):
    h = LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(rng.randint(0, 3))})
    return 1 + (T - 1) * h


def random_unimodular(rng, r):
    U = la.identity(r)
    for _ in range(3 * r):
        if r > 1:
            i, j = rng.sample(range(r), 2)
            c = rng.randint(-2, 2)
            U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        if rng.random() < 0.3:
            k = rng.randrange(r)
            U[k] = [-x for x in U[k]]
    return U


def random_module(rng):
    kind = rng.randrange(4)
    if kind == 0:
        while True:
            f = LaurentPoly({e: rng.randint(-5, 5) for e in range(rng.randint(1, 3))})
            if not f.is_zero():
                return CyclicModule(f)
    if kind == 1:
        return LatticeModule(tuple(map(tuple, random_unimodular(rng, rng.randint(1, 3)))))
    if kind == 2:
        return FreePresented(rng.randint(1, 2))
    while True:
        a, b = (LaurentPoly({e: rng.randint(-3, 3) for e in range(2)}) for _ in range(2))
        try:
            return CoprimeIdeal(a, b)
        except Exception:
            continue


def criterion_5():
    failures = []
    rng = random.Random(20240601)
    for trial in range(100):
        M = random_module(rng)
        s = random_s(rng)
        phi = ModuleMap.multiplication(M, s)
        for n in range(1, 6):
            if not induced_iadic_map(phi, n).is_iso:
                failures.append(f"trial {trial}: {M!r}, s = {s}, n = {n}")
    return failures


def test_criterion_5_multiplication_by_S_is_iadic_iso():
    record(5, "multiplication by s in S is iso on M/MI^n, n <= 5 (100 pairs)", 30.0, criterion_5)


# -- 6 --------------------------------------------------------------------

def companion(coeffs):
    # monic polynomial with constant term +-1 gives a unimodular companion matrix
    r = len(coeffs)
    C = la.zeros(r, r)
    for i in range(1, r):
        C[i][i - 1] = 1
    for i in range(r):
        C[i][r - 1] = -coeffs[i]
    return C


def criterion_6():
    failures = []
    rng = random.Random(77)
    verdicts = []
    for trial in range(60):
        r = rng.randint(1, 4)
        if trial % 2:
            Tm = random_unimodular(rng, r)
        else:
            coeffs = [rng.choice([1, -1])] + [rng.randint(-3, 3) for _ in range(r - 1)]
            U = random_unimodular(rng, r)
            Tm = la.matmul(la.matmul(U, companion(coeffs)), la.inverse_unimodular(U))
        M = LatticeModule(tuple(map(tuple, Tm)))
        ours = residually_nilpotent(M).residually_nilpotent
        oracle = gamma_omega_bruteforce(M, 20).is_zero
        verdicts.append(ours)
        if ours != oracle:
            failures.append(f"trial {trial}: T = {Tm}, criterion {ours}, oracle {oracle}")
    check(failures, len(verdicts) >= 50, "fewer than 50 modules")
    check(failures, any(verdicts) and not all(verdicts), "sample lacks one of the two verdicts")
    return failures


def test_criterion_6_criterion_agrees_with_oracle():
    record(6, "residual nilpotence criterion vs brute-force oracle (60 lattices)", 20.0, criterion_6)


# -- 7 --------------------------------------------------------------------

def criterion_7():
    failures = []
    rng = random.Random(7)
    for trial in range(500):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        D, U, V = la.smith_normal_form(A)
        ok = abs(la.det_bareiss(U)) == 1 and abs(la.det_bareiss(V)) == 1
        ok &= la.matmul(la.matmul(U, A), V) == D
        diag = [D[i][i] for i in range(min(m, n))]
        ok &= all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        nz = [d for d in diag if d]
        ok &= all(d > 0 for d in nz) and diag[:len(nz)] == nz
        ok &= all(b % a == 0 for a, b in zip(nz, nz[1:]))
        H, W = la.hermite_normal_form(A)
        ok &= abs(la.det_bareiss(W)) == 1 and la.matmul(W, A) == H
        last, zero_seen = -1, False
        for i, row in enumerate(H):
            cols = [j for j, x in enumerate(row) if x]
            if not cols:
                zero_seen = True
                continue
            j = cols[0]
            ok &= not zero_seen and j > last and row[j] > 0
            ok &= all(0 <= H[r][j] < row[j] for r in range(i))
            last = j
        if not ok:
            failures.append(f"trial {trial}: {A}")
    return failures


def test_criterion_7_kernel_invariants():
    record(7, "SNF/HNF postconditions on 500 random matrices", 10.0, criterion_7)


# -- 8 --------------------------------------------------------------------

def criterion_8():
    failures = []
    s = 2 * T - 1
    for G in [gamma_n(n) for n in (3, 4, 5, 7)] + [wreath(), wreath_ideal()]:
        rep = telescope_chain(G, s, 3, 5)
        for st in rep.stages:
            check(failures, st.injective, f"{G.label} stage {st.index} not injective")
            check(failures, st.proper, f"{G.label} stage {st.index} not proper")
            check(failures, all(st.iso) and len(st.iso) == 5, f"{G.label} stage {st.index} iso {st.iso}")
    return failures


def test_criterion_8_telescope():
    record(8, "3-stage telescopes for gamma_n and wreath families", 5.0, criterion_8)
