"""The ten acceptance criteria, each at its stated tolerance.

Every test prints one PASS/FAIL line and also records it for the summary
printed at the end of the pytest run.
"""

import math
import time

import numpy as np
from conftest import ACCEPTANCE

from symtensor import (
    build_Ak,
    build_Bk,
    build_Ck,
    closed_form_2x2,
    diag_sym_spectrum,
    gelfand_estimate,
    general_eigen,
    hermitian_eigen,
    multi_diag_sym_spectrum,
    multisets_match,
    operator_norm,
    spec_Ak,
    spec_Bk,
    spec_Ck,
    sym_product,
)
from symtensor.spectral import multiset_union
from symtensor.theorems import backshift_eigenvector, check_kernel_vector, degree_block, run_suite, verify_point_spectrum_SM
from symtensor.theorems.checks import WITNESS_HALF, WITNESS_HALF_ROOT2, WITNESS_ROOT2_MINUS_1
from symtensor.theorems.report import Tally
from symtensor.theorems.sampling import cnormal, moduli_in, rng_for

R2 = math.sqrt(2.0)


def report(number, title, ok, detail):
    line = f"criterion {number:>2}  {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE[number] = line
    print(line)
    assert ok, line


def norm(M):
    return operator_norm(M).value


def test_criterion_01_closed_form_3x3():
    rng = rng_for(1)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(10_000):
        A, B = cnormal(rng, (2, 2)), cnormal(rng, (2, 2))
        worst = max(worst, float(np.max(np.abs(sym_product([A, B]) - closed_form_2x2(A, B)))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 5.0
    report(1, "2x2 -> 3x3 closed form", ok, f"max entry error {worst:.2e} (tol 1e-12), {elapsed:.2f} s (limit 5 s)")


def test_criterion_02_witness_constants():
    a, b = WITNESS_HALF_ROOT2
    e1 = abs(norm(sym_product([a, b])) - 1 / R2)
    L, M = WITNESS_ROOT2_MINUS_1
    e2 = abs(norm(sym_product([L, M])) - (R2 - 1))
    a, b = WITNESS_HALF
    e3 = abs(norm(sym_product([a, b])) - 0.5)
    T = 2 * sym_product([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    e4 = float(np.max(np.abs(T @ T - T)))
    worst = max(e1, e2, e3, e4)
    detail = f"1/sqrt2 err {e1:.1e}, sqrt2-1 err {e2:.1e}, 1/2 err {e3:.1e}, idempotence err {e4:.1e}"
    report(2, "witness constants", worst <= 1e-12, detail)


def test_criterion_03_spectral_radius_law():
    rng = rng_for(3)
    worst = 0.0
    gelfand_ok = True
    for trial in range(200):
        d = int(rng.integers(1, 6))
        n = 2 + trial % 2
        A = cnormal(rng, (d, d))
        rho = float(np.max(np.abs(general_eigen(A).eigenvalues)))
        T = sym_product([A] * n)
        rho_n = float(np.max(np.abs(general_eigen(T).eigenvalues)))
        worst = max(worst, abs(rho_n - rho**n) / rho**n)
        for k in (1, 4, 16):
            gelfand_ok &= rho_n <= gelfand_estimate(T, k) * (1 + 1e-6)
    ok = worst <= 1e-6 and gelfand_ok
    report(3, "rho(A^.n) = rho(A)^n", ok, f"worst relative error {worst:.2e} (tol 1e-6), Gelfand upper bound held: {gelfand_ok}")


def test_criterion_04_tridiagonal_closed_forms():
    start = time.perf_counter()
    worst = 0.0
    union_ok = True
    for k in range(61):
        a = hermitian_eigen(build_Ak(k)).eigenvalues
        b = hermitian_eigen(build_Bk(k)).eigenvalues
        worst = max(worst, np.max(np.abs(a - spec_Ak(k))), np.max(np.abs(b - spec_Bk(k))))
        if k >= 1:
            c = hermitian_eigen(build_Ck(k)).eigenvalues
            worst = max(worst, np.max(np.abs(c - spec_Ck(k))))
            union = multiset_union(spec_Bk(k), spec_Ck(k))
        else:
            union = spec_Bk(k)
        union_ok &= multisets_match(spec_Ak(k), union, 1e-10)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and union_ok and elapsed < 30.0
    report(4, "cosine spectra of A_k, B_k, C_k, k <= 60", ok, f"max deviation {worst:.2e} (tol 1e-10), union law {union_ok}, {elapsed:.1f} s (limit 30 s)")


def test_criterion_05_shift_block_oracle():
    worst = 0.0
    for k in range(26):
        worst = max(worst, np.max(np.abs(degree_block(k, "sym") - build_Bk(k))))
        if k >= 1:
            worst = max(worst, np.max(np.abs(degree_block(k, "asym") - build_Ck(k))))
    report(5, "dense restriction reproduces B_k, C_k, k <= 25", worst <= 1e-12, f"max entry error {worst:.2e} (tol 1e-12)")


def test_criterion_06_diagonal_spectra():
    rng = rng_for(6)
    worst_ok = True
    count = 0
    for trial in range(100):
        n = 2 + trial % 2
        N = int(rng.integers(1, 9))
        seqs = [cnormal(rng, N) for _ in range(n)]
        dense = general_eigen(sym_product([np.diag(s) for s in seqs])).eigenvalues
        closed = diag_sym_spectrum(seqs[0], seqs[1], N) if n == 2 else multi_diag_sym_spectrum(seqs, N)
        ok = multisets_match(closed, dense, 1e-9)
        if n == 2:
            ok &= multisets_match(multi_diag_sym_spectrum(seqs, N), dense, 1e-9)
        worst_ok &= ok
        count += ok
    report(6, "diagonal product spectra", worst_ok, f"{count}/100 instances matched to 1e-9")


def test_criterion_07_kernel_construction():
    rng = rng_for(7)
    K = 60
    failed = {"equations": 0, "decay": 0, "pairs": 0}
    worst_eq = 0.0
    for draw in range(50):
        _, t = check_kernel_vector(moduli_in(rng, K + 2, 0.1, 1.0), K, 1e-13)
        checks = {w["check"] for w in t.witnesses}
        failed["equations"] += any(c.startswith("kernel equation") for c in checks)
        failed["decay"] += any(c.startswith("decay") for c in checks)
        failed["pairs"] += any(c.startswith("step-three") for c in checks)
        worst_eq = max([worst_eq] + [-w["margin"] + 1e-13 for w in t.witnesses if w["check"].startswith("kernel equation")])
    point = Tally()
    for draw in range(100):
        mu = moduli_in(rng, 31, 0.1, 1.0)
        lam = cnormal(rng, 1)[0]
        verify_point_spectrum_SM(mu, lam, 30, 1e-12, tally=point, label=draw)
    detail = (
        f"of 50 draws, {failed['equations']} break an interior kernel equation (largest residual {worst_eq:.3g}, tol 1e-13), "
        f"{failed['decay']} break the decay bound, {failed['pairs']} break the step-three bound; "
        f"zero-forcing: {point.failures} of {point.trials} checks failed over 100 draws"
    )
    ok = not any(failed.values()) and point.failures == 0
    report(7, "kernel construction and zero-forcing", ok, detail)


def test_criterion_08_backshift_eigenvectors():
    rng = rng_for(8)
    K = 60
    within_tail = within_allowance = 0
    worst = -math.inf
    for _ in range(100):
        mu = moduli_in(rng, K + 1, 0.0, 1.0)
        mu[0] = moduli_in(rng, 1, 0.1, 1.0)[0]
        lam = abs(mu[0]) * rng.uniform(0.0, 0.45) * np.exp(2j * np.pi * rng.uniform())
        ev = backshift_eigenvector(mu, lam, K)
        within_tail += ev.residual <= ev.tail_bound
        within_allowance += ev.residual <= ev.tail_bound + ev.rounding
        worst = max(worst, ev.residual - ev.tail_bound - ev.rounding)
    detail = (
        f"{within_allowance}/100 within geometric tail + rounding allowance; "
        f"{within_tail}/100 below the bare tail; largest residual minus allowance {worst:.2e}"
    )
    report(8, "back-shift eigenvector residuals", within_allowance == 100, detail)


def test_criterion_09_property_suites():
    runs = [
        run_suite("lemma-2.10", trials=10_000, seed=9),
        run_suite("lemma-10.1", trials=10_000, seed=9),
        run_suite("lemma-4.1", seed=9),
        run_suite("prop-4.4", seed=9),
        run_suite("thm-4.6", seed=9, tol=1e-11),
        run_suite("gallery-4", seed=9),
    ]
    ok = all(r.passed for r in runs)
    detail = ", ".join(f"{r.suite} {r.failures}/{r.trials}" for r in runs) + " failures"
    report(9, "property suites", ok, detail)


def test_criterion_10_finite_spectral_shadow():
    r = run_suite("thm-6.3", trials=200, seed=10, tol=1e-7)
    report(10, "containment of sigma(A . I) and sigma(A . A)", r.passed, f"{r.failures} of {r.trials} checks failed, worst margin {r.worst_margin:.2e}")
