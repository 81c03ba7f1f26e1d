"""Verification suites: exact sweeps that cross-check independent computations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial
from typing import Callable, Iterable

from gmpy2 import mpq

from .combinat import int_vectors, partitions, partitions_upto, strict_partitions_upto
from .exactpoly import Poly, evaluate, poly_sum, rat_str
from .identities import (
    DA,
    check_adjoint,
    check_bstar,
    check_hook_lemma,
    dexp_checks,
    gamma,
    phi,
    psi,
)
from .tau import (
    A_coeff,
    A_pfaffian,
    E_coeff,
    TauDiscrepancy,
    _dfact_product,
    a_coeff,
    chain_count,
    is_weakly_positive,
    tau_bgw,
    tau_kw,
)
from .vertex import (
    QBASIS,
    LinComb,
    apply_B,
    apply_Bstar,
    q_inner,
    qfun,
    schur,
)
from .wops import (
    NamedOp,
    OpSpec,
    apply_named,
    apply_P_brute,
    apply_P_closed_q,
    apply_P_closed_s,
    apply_P_modes,
    closed_action_named,
    coeff_c,
    coeff_d,
    coeff_g,
    coeff_h,
    falling,
    named_via_P,
    wbgw_box_adding,
)

DEFAULT_WEIGHT = 6


def _show(x):
    if isinstance(x, (Poly, LinComb)):
        return x.to_json()
    if isinstance(x, type(mpq())):
        return rat_str(x)
    if isinstance(x, tuple):
        return [_show(v) for v in x]
    return x if isinstance(x, (int, str, bool, type(None), list, dict)) else repr(x)


@dataclass
class Report:
    cases: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def check(self, suite: str, key, ok: bool, **detail) -> bool:
        self.cases[suite] = self.cases.get(suite, 0) + 1
        if not ok:
            self.failures.append({"suite": suite, "case": _show(key), **{k: _show(v) for k, v in detail.items()}})
        return ok

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "Report") -> "Report":
        for k, v in other.cases.items():
            self.cases[k] = self.cases.get(k, 0) + v
        self.failures.extend(other.failures)
        return self

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "cases": dict(sorted(self.cases.items())),
            "failures": sorted(self.failures, key=lambda f: (f["suite"], str(f["case"]))),
        }


def random_poly(rng: random.Random, max_degree: int, odd: bool = False, terms: int = 4) -> Poly:
    """Small random polynomial with small rational coefficients."""
    out = []
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        shapes = [lam for lam in partitions(d) if not odd or all(x % 2 for x in lam)]
        if not shapes:
            continue
        lam = rng.choice(shapes)
        exps: dict = {}
        for x in lam:
            exps[x] = exps.get(x, 0) + 1
        out.append(Poly.monomial(exps, mpq(rng.randint(-5, 5), rng.randint(1, 3))))
    return poly_sum(out)


# -- closed actions against brute force --------------------------------------


def _action_sweep(rep: Report, suite: str, labels: Iterable, rho: int, build, closed, ks=(1, 2, 3, 4), ms=range(-5, 6)):
    for lam in labels:
        f = build(lam)
        for k in ks:
            for m in ms:
                spec = OpSpec(k, m, rho)
                b = apply_P_brute(spec, f)
                c = closed(k, m, lam)
                rep.check(suite, (lam, k, m), c.to_poly() == b, closed=c, brute=b)
                if k <= 3:
                    md = apply_P_modes(spec, f)
                    rep.check(suite + ".modes", (lam, k, m), md == b, modes=md, brute=b)


def suite_thm1(w: int) -> Report:
    rep = Report()
    _action_sweep(rep, "thm1", strict_partitions_upto(w), -1, qfun, apply_P_closed_q)
    vectors = [v for v in int_vectors(3, -2, 5) if 0 <= sum(v) <= w]
    _action_sweep(rep, "thm1.vectors", vectors, -1, qfun, apply_P_closed_q)
    return rep


def suite_thm2(w: int) -> Report:
    rep = Report()
    _action_sweep(rep, "thm2", partitions_upto(w), 0, schur, apply_P_closed_s)
    vectors = [v for v in int_vectors(3, -2, 5) if 0 <= sum(v) <= w]
    _action_sweep(rep, "thm2.vectors", vectors, 0, schur, apply_P_closed_s)
    return rep


def eigen_checks(rep: Report, w: int) -> None:
    for lam in partitions_upto(w):
        l = len(lam)
        for k in (1, 2, 3, 4):
            s = apply_P_closed_s(k, 0, lam)
            val = sum(k * falling(x - i - 1, k - 1) for i, x in enumerate(lam)) + falling(-l, k)
            expect = LinComb("schur", {lam: val})
            rep.check("eigen.schur", (lam, k), s == expect, got=s, expected=expect)
            q = apply_P_closed_q(k, 0, lam)
            rep.check("eigen.q.scalar", (lam, k), q.is_multiple_of(lam), got=q)
            if len(set(lam)) == len(lam):
                val = sum((coeff_c(k, 0, x) for x in lam), mpq(0))
                expect = LinComb(QBASIS, {lam: val})
                rep.check("eigen.q", (lam, k), q == expect, got=q, expected=expect)


# -- algebraic relations -----------------------------------------------------

RHOS = (mpq(0), mpq(-1), mpq(1, 2), mpq(-1, 3))


def relation_checks(rep: Report, seed: int = 7, samples: int = 3) -> None:
    rng = random.Random(seed)
    polys = [random_poly(rng, 4) for _ in range(samples)] + [Poly.const(1)]
    odd_polys = [random_poly(rng, 5, odd=True) for _ in range(samples)] + [Poly.const(1)]
    idx = range(-3, 4)
    for rho in RHOS:
        for p_i, p in enumerate(polys):
            for m, n in product(idx, idx):
                B = lambda a, f: apply_B(a, f, rho)
                Bs = lambda a, f: apply_Bstar(a, f, rho)
                lhs = B(m, B(n, p)) - B(n, B(m, p)).scale(rho)
                rhs = B(m + 1, B(n - 1, p)).scale(rho) - B(n - 1, B(m + 1, p))
                rep.check("relations.BB", (rho, p_i, m, n), lhs == rhs, lhs=lhs, rhs=rhs)
                a, b = m, n
                lhs = B(a, Bs(b, p)) - Bs(b, B(a, p)).scale(rho)
                rhs = B(a - 1, Bs(b - 1, p)).scale(rho) - Bs(b - 1, B(a - 1, p))
                if a == b:
                    rhs = rhs + p.scale((1 - rho) ** 2)
                rep.check("relations.BBstar", (rho, p_i, a, b), lhs == rhs, lhs=lhs, rhs=rhs)
        for n in range(-4, 5):
            one = Poly.const(1)
            rep.check("relations.B1", (rho, n), n > 0 or apply_B(n, one, rho) == (one if n == 0 else Poly()))
            rep.check("relations.Bstar1", (rho, n), n < 0 or apply_Bstar(n, one, rho) == (one if n == 0 else Poly()))
    # Heisenberg commutator through the mode realization
    for rho in (mpq(0), mpq(-1), mpq(1, 2)):
        for p_i, p in enumerate(polys):
            for m in range(1, 5):
                P1 = lambda mm, f: apply_P_modes(OpSpec(1, mm, rho), f)
                lhs = P1(m, P1(-m, p)) - P1(-m, P1(m, p))
                rhs = p.scale(m * (1 - rho**m))
                rep.check("relations.heisenberg", (rho, p_i, m), lhs == rhs, lhs=lhs, rhs=rhs)
    # odd-variable identity B*_n = (-1)^n B_{-n} and the star-product case formulas
    for p_i, p in enumerate(odd_polys):
        for n in range(-5, 6):
            lhs = apply_Bstar(n, p, -1)
            rhs = apply_B(-n, p, -1).scale((-1) ** (n % 2))
            rep.check("relations.hat", (p_i, n), lhs == rhs, lhs=lhs, rhs=rhs)
        for a, b in product(range(-3, 4), range(-3, 4)):
            star = _star_literal(a, b, p, -1)
            case = apply_Bstar(a, apply_B(b, p, -1), -1) if b < 0 else -apply_B(b, apply_Bstar(a, p, -1), -1)
            rep.check("relations.star.q", (p_i, a, b), star == case, star=star, case=case)
            star_commutator_checks(rep, p_i, p, a, b)
    for p_i, p in enumerate(polys):
        for a, b in product(range(-3, 4), range(-3, 4)):
            star = _star_literal(a, b, p, 0)
            case = apply_Bstar(a, apply_B(b, p, 0), 0) if b < 0 else -apply_B(b + 1, apply_Bstar(a + 1, p, 0), 0)
            rep.check("relations.star.schur", (p_i, a, b), star == case, star=star, case=case)


def _star_literal(a: int, b: int, p: Poly, rho) -> Poly:
    out = apply_Bstar(a, apply_B(b, p, rho), rho)
    if a == b and b >= 0:
        out = out - p.scale(1 - rho)
    return out


def star_commutator_checks(rep: Report, p_i: int, p: Poly, a: int, b: int) -> None:
    # on the odd subring B*_a = (-1)^a B_{-a}, so B_a * B_b := B_a B_b - 2(-1)^b delta_{a,-b} delta_{b>=0}
    def star(f):
        out = apply_B(a, apply_B(b, f, -1), -1)
        if a == -b and b >= 0:
            out = out - f.scale(2 * (-1) ** (b % 2))
        return out

    for n in range(-3, 4):
        lhs = star(apply_B(n, p, -1)) - apply_B(n, star(p), -1)
        rhs = Poly()
        if n == -b:
            rhs = rhs + apply_B(a, p, -1)
        if n == -a:
            rhs = rhs - apply_B(b, p, -1)
        rhs = rhs.scale(2 * (-1) ** (n % 2))
        rep.check("relations.commutator", (p_i, a, b, n), lhs == rhs, lhs=lhs, rhs=rhs)


def coefficient_checks(rep: Report) -> None:
    for rho in RHOS:
        for k in range(1, 6):
            rep.check("coeff.h0", (rho, k), coeff_h(k, 0, rho) == 0)
            for b in range(-6, 7):
                ok = coeff_g(k, b, rho) == coeff_h(k, b, rho) - coeff_h(k, b + 1, rho)
                rep.check("coeff.g=dh", (rho, k, b), ok)
    for k in range(1, 6):
        for b in range(-6, 7):
            rep.check("coeff.d=-g", (k, b), coeff_d(k, b) == -coeff_g(k, b, -1))
            for m in range(-5, 6):
                ok = coeff_c(k, m, b) == 2 * coeff_d(k, b - m) - 2 * (-1) ** (m % 2) * coeff_d(k, -b)
                rep.check("coeff.c", (k, m, b), ok)
    # P^(k)_m . 1 at rho = -1
    for k in range(1, 5):
        for m in range(-4, 1):
            got = apply_P_brute(OpSpec(k, m, -1), Poly.const(1))
            terms = [((a, -m - a), (-1) ** ((m - a) % 2) * coeff_d(k, a)) for a in range(-m + 1)] if m < 0 else []
            expect = LinComb.from_labels(QBASIS, terms).to_poly()
            rep.check("relations.P1", (k, m), got == expect, got=got, expected=expect)


def brute_window_checks(rep: Report, w: int) -> None:
    """Terms beyond the tight window vanish: compare with the wider window b <= deg + |m| + k."""
    for lam in strict_partitions_upto(min(w, 5)):
        f = qfun(lam)
        d = f.degree()
        for k in (1, 2, 3, 4):
            for m in range(-5, 6):
                spec = OpSpec(k, m, -1)
                wide = apply_P_brute(spec, f, window=(-d, d + abs(m) + k))
                rep.check("brute.window", (lam, k, m), wide == apply_P_brute(spec, f))


def suite_relations(w: int) -> Report:
    rep = Report()
    relation_checks(rep)
    coefficient_checks(rep)
    eigen_checks(rep, w)
    brute_window_checks(rep, w)
    return rep


def suite_virasoro(w: int) -> Report:
    rep = Report()
    L = lambda m, f: apply_named(NamedOp("Lhat", m), f)
    for lam in strict_partitions_upto(min(w, 6)):
        q = qfun(lam)
        for n, m in product((-3, -2, -1), repeat=2):
            lhs = L(n, L(m, q)) - L(m, L(n, q))
            rhs = L(n + m, q).scale(4 * (n - m))
            rep.check("virasoro", (lam, n, m), lhs == rhs, lhs=lhs, rhs=rhs)
    return rep


def named_ops(max_m: int = 3) -> list:
    ops = [NamedOp("Lhat", m) for m in range(-max_m, max_m + 1)]
    ops += [NamedOp("What", m) for m in range(-max_m, max_m + 1) if m % 2]
    ops += [NamedOp("Nhat", m) for m in range(-max_m, max_m + 1) if m % 2 == 0]
    ops += [NamedOp("L", m) for m in range(-max_m, max_m + 1)]
    ops += [NamedOp("W", m) for m in range(-max_m, max_m + 1)]
    ops += [NamedOp(n) for n in ("W0", "WBGW", "WKW", "WKWperp", "What3")]
    return ops


def suite_named(w: int) -> Report:
    rep = Report()
    for op in named_ops():
        labels = strict_partitions_upto(w) if op.basis == QBASIS else partitions_upto(w)
        key = op.name if op.m is None else f"{op.name}[{op.m}]"
        for lam in labels:
            f = qfun(lam) if op.basis == QBASIS else schur(lam)
            lit = apply_named(op, f)
            closed = closed_action_named(op, lam)
            rep.check("named.closed", (key, lam), closed.to_poly() == lit, closed=closed, literal=lit)
            via = named_via_P(op, lam)
            rep.check("named.viaP", (key, lam), via == closed, via_P=via, closed=closed)
            if op.name == "WBGW":
                box = wbgw_box_adding(lam)
                rep.check("named.box", lam, box == closed, box=box, closed=closed)
    lit = apply_named(NamedOp("Lhat", -1), qfun((1,)))
    expect = qfun((3,)).scale(4) - qfun((2, 1))
    rep.check("named.spot", "Lhat[-1] Q_1", lit == expect, literal=lit, expected=expect)
    return rep


def _tau_check(rep: Report, suite: str, run: Callable, order: int, spots: dict) -> None:
    try:
        s = run(order, "both")
    except TauDiscrepancy as exc:
        rep.check(suite, "both", False, error=str(exc))
        return
    rep.check(suite, "both", True)
    for n, expect in spots.items():
        rep.check(suite + ".spot", n, s[n] == expect, got=s[n], expected=expect)
    for n in range(order + 1):
        c = s[n]
        step = 3 if suite == "kw" else 1
        deg_ok = c.is_homogeneous() and c.degree() == n * step
        rep.check(suite + ".grading", n, deg_ok and c.is_odd_supported())


def suite_bgw(w: int) -> Report:
    rep = Report()
    t1 = Poly.var(1)
    _tau_check(rep, "bgw", tau_bgw, 6, {1: t1.scale(mpq(1, 8)), 2: (t1 * t1).scale(mpq(9, 128))})
    for lam in strict_partitions_upto(10):
        rep.check("bgw.E", lam, E_coeff(lam) == evaluate(qfun(lam), {1: 1}))
        ratio = E_coeff(lam) / E_coeff(tuple(2 * x for x in lam))
        rep.check("bgw.E2", lam, ratio == _dfact_product(lam))
    for lam in strict_partitions_upto(12):
        n = sum(lam)
        rep.check("bgw.chains", lam, chain_count(lam) == factorial(n) * E_coeff(lam) / 2**n)
    return rep


def suite_kw(w: int) -> Report:
    rep = Report()
    t1, t3 = Poly.var(1), Poly.var(3)
    _tau_check(rep, "kw", tau_kw, 4, {1: (t1 * t1 * t1).scale(mpq(1, 6)) + t3.scale(mpq(1, 8))})
    for lam, val in {(3, 0): mpq(2, 3), (1, 2): mpq(4, 3), (6, 0): mpq(2, 9), (2, 0): mpq(0), (4, 2): mpq(4, 9)}.items():
        rep.check("kw.A.spot", lam, A_coeff(lam) == val and A_pfaffian(lam) == val)
    for l in (2, 4):
        for lam in product(range(13), repeat=l):
            if is_weakly_positive(lam):
                rep.check("kw.pfaffian", lam, A_pfaffian(lam) == A_coeff(lam))
    # pairing of Q_nu with the closed expansion
    tau = tau_kw(4, "closed")
    for nu in int_vectors(3, -2, 6):
        w3 = sum(nu)
        if w3 < 0 or w3 > 12:
            continue
        got = q_inner(qfun(nu), tau[w3 // 3]) if w3 % 3 == 0 else mpq(0)
        rep.check("kw.pairing", nu, got == a_coeff(nu), got=got, expected=a_coeff(nu))
    return rep


# -- identity suites ---------------------------------------------------------


def _dtilde(l: int, top: int):
    """mu_1 > ... > mu_l >= 0 with entries <= top."""
    return combinations(range(top, -1, -1), l)


def suite_phi(w: int) -> Report:
    rep = Report()
    for l in (2, 4):
        for mu in _dtilde(l, 8):
            v = phi(mu)
            rep.check("phi", mu, v == 0, value=v)
    return rep


def suite_gamma(w: int) -> Report:
    rep = Report()
    for nu in list(_dtilde(4, 6)) + [(5, 4, 3, 2, 1, 0)]:
        v = gamma(nu)
        rep.check("gamma", nu, v == 0, value=v)
    return rep


def suite_psi(w: int) -> Report:
    rep = Report()
    for nu in list(_dtilde(4, 6)) + [(5, 4, 3, 2, 1, 0)]:
        v = psi(nu)
        rep.check("psi", nu, v == 0, value=v)
    return rep


def suite_dexp(w: int) -> Report:
    rep = Report()
    for nu in _dtilde(4, 8):
        for name, v in dexp_checks(nu).items():
            rep.check("dexp." + name, nu, v.ok, lhs=v.lhs, rhs=v.rhs)
    for m, n in product(range(5), repeat=2):
        v = DA((2 * (3 * m + 2), 2 * (3 * n + 2)))
        rep.check("dexp.mod3", (m, n), v == 0, value=v)
    return rep


def suite_hook(w: int) -> Report:
    rep = Report()
    for lam in int_vectors(3, 0, 4):
        for n in range(-4, 1):
            for m in range(5):
                v = check_hook_lemma(lam, n, m)
                rep.check("hook", (lam, n, m), v.ok, lhs=v.lhs, rhs=v.rhs)
    return rep


def suite_bstar(w: int) -> Report:
    rep = Report()
    for lam in int_vectors(3, 0, 5):
        for n in range(-4, 5):
            v = check_bstar(n, lam)
            rep.check("bstar", (n, lam), v.ok, closed=v.lhs, direct=v.rhs)
    return rep


def suite_adjoint(w: int, seed: int = 11, samples: int = 3) -> Report:
    rep = Report()
    rng = random.Random(seed)
    fs = [random_poly(rng, 9, odd=True, terms=6) for _ in range(samples)]
    for mu in strict_partitions_upto(6):
        for f_i, f in enumerate(fs):
            v = check_adjoint(mu, f)
            rep.check("adjoint", (mu, f_i), v.ok, lhs=v.lhs, rhs=v.rhs)
    return rep


IDENTITY_SUITES = {
    "phi": suite_phi,
    "gamma": suite_gamma,
    "psi": suite_psi,
    "hook": suite_hook,
    "bstar": suite_bstar,
    "dexp": suite_dexp,
    "adjoint": suite_adjoint,
}


def suite_identities(w: int) -> Report:
    rep = Report()
    for fn in IDENTITY_SUITES.values():
        rep.merge(fn(w))
    return rep


SUITES = {
    "thm1": suite_thm1,
    "thm2": suite_thm2,
    "relations": suite_relations,
    "virasoro": suite_virasoro,
    "named": suite_named,
    "bgw": suite_bgw,
    "kw": suite_kw,
    "identities": suite_identities,
    **IDENTITY_SUITES,
}


def run_suite(name: str, max_weight: int | None = None) -> Report:
    w = DEFAULT_WEIGHT if max_weight is None else max_weight
    if name == "all":
        rep = Report()
        for key in ("thm1", "thm2", "relations", "virasoro", "named", "bgw", "kw", "identities"):
            rep.merge(SUITES[key](w))
        return rep
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](w)
