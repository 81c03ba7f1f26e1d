"""Acceptance criteria 1-11, each reported as one PASS/FAIL line."""

import random
import time
from itertools import combinations, product
from math import factorial

import pytest
from gmpy2 import mpq

from schurw.combinat import int_vectors, partitions_upto, strict_partitions_upto
from schurw.exactpoly import Poly, evaluate, t
from schurw.identities import (
    DA,
    check_adjoint,
    check_bstar,
    check_hook_lemma,
    dexp_checks,
    gamma,
    phi,
    psi,
)
from schurw.tau import (
    A_coeff,
    A_pfaffian,
    E_coeff,
    TauDiscrepancy,
    chain_count,
    is_weakly_positive,
    tau_bgw,
    tau_kw,
)
from schurw.verify import random_poly
from schurw.vertex import LinComb, apply_B, apply_Bstar, qfun, schur
from schurw.wops import (
    NamedOp,
    OpSpec,
    apply_named,
    apply_P_brute,
    apply_P_closed_q,
    apply_P_closed_s,
    apply_P_modes,
    closed_action_named,
    coeff_c,
    falling,
)

KS = (1, 2, 3, 4)
MS = range(-5, 6)
VECTORS = list(int_vectors(3, -2, 5))


def _sweep(labels, rho, build, closed):
    """Compare closed vs brute (all k) and modes vs brute (k <= 3) on every label, k, m."""
    bad_closed, bad_modes, cases = [], [], 0
    start = time.perf_counter()
    for lam in labels:
        f = build(lam)
        for k, m in product(KS, MS):
            spec = OpSpec(k, m, rho)
            b = apply_P_brute(spec, f)
            cases += 1
            if closed(k, m, lam).to_poly() != b:
                bad_closed.append((lam, k, m))
            if k <= 3 and apply_P_modes(spec, f) != b:
                bad_modes.append((lam, k, m))
    return {"cases": cases, "closed": bad_closed, "modes": bad_modes, "seconds": time.perf_counter() - start}


@pytest.fixture(scope="module")
def sweeps():
    labels_q = strict_partitions_upto(8) + VECTORS
    labels_s = partitions_upto(8) + VECTORS
    return {
        "q": _sweep(labels_q, -1, qfun, apply_P_closed_q),
        "s": _sweep(labels_s, 0, schur, apply_P_closed_s),
    }


def test_criterion_01_q_side_sweep(criterion, sweeps):
    r = sweeps["q"]
    ok = not r["closed"] and r["seconds"] < 300
    criterion(1, "Q-side closed action = brute force", ok, f"{r['cases']} cases, failures {r['closed'][:5]}", seconds=r["seconds"])
    assert not r["closed"]
    assert r["seconds"] < 300


def test_criterion_02_schur_side_sweep(criterion, sweeps):
    r = sweeps["s"]
    ok = not r["closed"] and r["seconds"] < 300
    criterion(2, "Schur-side closed action = brute force", ok, f"{r['cases']} cases, failures {r['closed'][:5]}", seconds=r["seconds"])
    assert not r["closed"]
    assert r["seconds"] < 300


def test_criterion_03_mode_oracle(criterion, sweeps):
    bad = sweeps["q"]["modes"] + sweeps["s"]["modes"]
    seconds = sweeps["q"]["seconds"] + sweeps["s"]["seconds"]
    criterion(3, "mode expansion = brute force (k <= 3)", not bad, f"failures {bad[:5]}", seconds=seconds)
    assert not bad


def _named_ops():
    ops = [NamedOp("Lhat", m) for m in range(-3, 4)]
    ops += [NamedOp("What", m) for m in (-3, -1, 1, 3)]
    ops += [NamedOp("Nhat", m) for m in (-2, 0, 2)]
    ops += [NamedOp("WBGW"), NamedOp("WKWperp")]
    ops += [NamedOp("L", m) for m in range(-3, 4)]
    ops += [NamedOp("W", m) for m in range(-3, 4)]
    return ops


def test_criterion_04_named_closed_actions(criterion):
    bad, cases = [], 0
    for op in _named_ops():
        labels = strict_partitions_upto(8) if op.basis == "q" else partitions_upto(8)
        build = qfun if op.basis == "q" else schur
        for lam in labels:
            cases += 1
            if closed_action_named(op, lam).to_poly() != apply_named(op, build(lam)):
                bad.append((op, lam))
    spot_op = NamedOp("Lhat", -1)
    spot_closed = closed_action_named(spot_op, (1,))
    spot_lit = apply_named(spot_op, qfun((1,)))
    spot = (
        spot_closed == LinComb("q", {(3,): 4, (2, 1): -1})
        and spot_lit == t(3).scale(12) + (t(1) ** 3).scale(4)
    )
    ok = not bad and spot
    criterion(4, "named closed actions = operator actions", ok, f"{cases} cases, spot {spot}, failures {bad[:3]}")
    assert not bad
    assert spot


def test_criterion_05_bgw(criterion):
    start = time.perf_counter()
    try:
        s = tau_bgw(6, "both")
        agree = True
    except TauDiscrepancy:
        s, agree = tau_bgw(6, "closed"), False
    elapsed = time.perf_counter() - start
    spots = s[1] == t(1).scale(mpq(1, 8)) and s[2] == (t(1) ** 2).scale(mpq(9, 128))
    ok = agree and spots and elapsed < 120
    criterion(5, "BGW cut-and-join = closed expansion to order 6", ok, f"agree {agree}, spots {spots}")
    assert agree and spots
    assert elapsed < 120


def test_criterion_06_kw(criterion):
    start = time.perf_counter()
    try:
        s = tau_kw(4, "both")
        agree = True
    except TauDiscrepancy:
        s, agree = tau_kw(4, "closed"), False
    elapsed = time.perf_counter() - start
    spot = s[1] == (t(1) ** 3).scale(mpq(1, 6)) + t(3).scale(mpq(1, 8))
    ok = agree and spot and elapsed < 300
    criterion(6, "KW cut-and-join = closed expansion to order 4", ok, f"agree {agree}, spot {spot}")
    assert agree and spot
    assert elapsed < 300


def test_criterion_07_chain_counting(criterion):
    start = time.perf_counter()
    bad = []
    labels = strict_partitions_upto(12)
    for mu in labels:
        n = sum(mu)
        if chain_count(mu) != factorial(n) * E_coeff(mu) / 2**n:
            bad.append(mu)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    criterion(7, "chain count = n! E / 2^n", ok, f"{len(labels)} labels, failures {bad[:5]}")
    assert not bad
    assert elapsed < 60


def test_criterion_08_E_and_A(criterion):
    bad_E = [lam for lam in strict_partitions_upto(10) if E_coeff(lam) != evaluate(qfun(lam), {1: 1})]
    bad_A, cases = [], 0
    for l in (2, 4):
        for lam in product(range(13), repeat=l):
            if is_weakly_positive(lam):
                cases += 1
                if A_pfaffian(lam) != A_coeff(lam):
                    bad_A.append(lam)
    spots = {(3, 0): mpq(2, 3), (1, 2): mpq(4, 3), (6, 0): mpq(2, 9)}
    bad_spot = [lam for lam, v in spots.items() if A_pfaffian(lam) != v or A_coeff(lam) != v]
    ok = not (bad_E or bad_A or bad_spot)
    criterion(8, "E and A coefficient oracles", ok, f"{cases} Pfaffian cases, failures {bad_E[:3]} {bad_A[:3]} {bad_spot}")
    assert ok


def _dtilde(l, top):
    return list(combinations(range(top, -1, -1), l))


def test_criterion_09_identities(criterion):
    start = time.perf_counter()
    bad = []
    for l in (2, 4):
        bad += [("phi", mu) for mu in _dtilde(l, 8) if phi(mu) != 0]
    labels = _dtilde(4, 6) + [(5, 4, 3, 2, 1, 0)]
    bad += [("gamma", nu) for nu in labels if gamma(nu) != 0]
    bad += [("psi", nu) for nu in labels if psi(nu) != 0]
    for nu in _dtilde(4, 8):
        bad += [("dexp." + k, nu) for k, v in dexp_checks(nu).items() if not v]
    for m, n in product(range(5), repeat=2):
        if DA((2 * (3 * m + 2), 2 * (3 * n + 2))) != 0:
            bad.append(("DA", (m, n)))
    for lam in int_vectors(3, 0, 4):
        for n, m in product(range(-4, 1), range(5)):
            if not check_hook_lemma(lam, n, m):
                bad.append(("hook", lam, n, m))
    for lam in int_vectors(3, 0, 5):
        for n in range(-4, 5):
            if not check_bstar(n, lam):
                bad.append(("bstar", lam, n))
    rng = random.Random(11)
    fs = [random_poly(rng, 9, odd=True, terms=6) for _ in range(3)]
    for mu in strict_partitions_upto(6):
        bad += [("adjoint", mu, i) for i, f in enumerate(fs) if not check_adjoint(mu, f)]
        if closed_action_named(NamedOp("WKWperp"), mu).to_poly() != apply_named(NamedOp("WKWperp"), qfun(mu)):
            bad.append(("WKWperp", mu))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    criterion(9, "identity suite", ok, f"failures {bad[:5]}")
    assert not bad
    assert elapsed < 600


RHOS = (mpq(0), mpq(-1), mpq(1, 2), mpq(-1, 3))


def test_criterion_10_relations(criterion):
    bad = []
    rng = random.Random(5)
    polys = [random_poly(rng, 4) for _ in range(3)] + [Poly.const(1)]
    idx = range(-3, 4)
    for rho in RHOS:
        B = lambda a, f: apply_B(a, f, rho)
        Bs = lambda a, f: apply_Bstar(a, f, rho)
        for i, p in enumerate(polys):
            for m, n in product(idx, idx):
                lhs = B(m, B(n, p)) - B(n, B(m, p)).scale(rho)
                rhs = B(m + 1, B(n - 1, p)).scale(rho) - B(n - 1, B(m + 1, p))
                if lhs != rhs:
                    bad.append(("BB", rho, i, m, n))
                lhs = B(m, Bs(n, p)) - Bs(n, B(m, p)).scale(rho)
                rhs = B(m - 1, Bs(n - 1, p)).scale(rho) - Bs(n - 1, B(m - 1, p))
                if m == n:
                    rhs = rhs + p.scale((1 - rho) ** 2)
                if lhs != rhs:
                    bad.append(("BB*", rho, i, m, n))
            for m in range(1, 5):
                P1 = lambda mm, f: apply_P_modes(OpSpec(1, mm, rho), f)
                if P1(m, P1(-m, p)) - P1(-m, P1(m, p)) != p.scale(m * (1 - rho**m)):
                    bad.append(("heisenberg", rho, i, m))
    L = lambda m, f: apply_named(NamedOp("Lhat", m), f)
    for lam in strict_partitions_upto(6):
        q = qfun(lam)
        for n, m in product((-3, -2, -1), repeat=2):
            if L(n, L(m, q)) - L(m, L(n, q)) != L(n + m, q).scale(4 * (n - m)):
                bad.append(("virasoro", lam, n, m))
    criterion(10, "vertex, Heisenberg and Virasoro relations", not bad, f"failures {bad[:5]}")
    assert not bad


def test_criterion_11_eigenfunctions(criterion):
    bad = []
    for lam in partitions_upto(8):
        l = len(lam)
        strict = len(set(lam)) == l
        for k in KS:
            q = apply_P_closed_q(k, 0, lam)
            if not q.is_multiple_of(lam):
                bad.append(("q.scalar", lam, k))
            if strict and q != LinComb("q", {lam: sum((coeff_c(k, 0, x) for x in lam), mpq(0))}):
                bad.append(("q.value", lam, k))
            val = sum(k * falling(x - i - 1, k - 1) for i, x in enumerate(lam)) + falling(-l, k)
            if apply_P_closed_s(k, 0, lam) != LinComb("schur", {lam: val}):
                bad.append(("s.value", lam, k))
    criterion(11, "eigenfunctions of P^(k)_0", not bad, f"failures {bad[:5]}")
    assert not bad
