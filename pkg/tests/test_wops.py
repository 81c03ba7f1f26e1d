from collections import Counter
from functools import lru_cache
from itertools import product

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from schurw.combinat import partitions_upto, strict_partitions_upto
from schurw.exactpoly import Poly, mul_var, partial, poly_sum, t
from schurw.vertex import LinComb, qfun, schur
from schurw.wops import (
    NamedOp,
    OpSpec,
    apply_named,
    apply_P_brute,
    apply_P_closed_q,
    apply_P_closed_s,
    apply_P_modes,
    binom_int,
    brute_window,
    closed_action_named,
    coeff_c,
    coeff_d,
    coeff_g,
    coeff_h,
    falling,
    named_via_P,
    wbgw_box_adding,
    what_display,
)

ONE = Poly.const(1)


# -- independent oracle: P^(k+1)_m = (-m-k) P^(k)_m + sum_a :J_a P^(k)_{m-a}: ----


def mode_table(k: int, m: int, cap: int) -> Counter:
    """Normal-ordered J-monomials of P^(k)_m, dropping those whose annihilation degree exceeds cap."""

    @lru_cache(maxsize=None)
    def P(k, m):
        if k == 1:
            return Counter({(m,): 1}) if m else Counter()
        out = Counter()
        for word, c in P(k - 1, m).items():
            out[word] += (-m - (k - 1)) * c
        lo = m - (k - 1) * cap
        for a in range(lo, cap + 1):
            if a == 0:
                continue
            for word, c in P(k - 1, m - a).items():
                new = tuple(sorted(word + (a,)))
                if sum(x for x in new if x > 0) <= cap:
                    out[new] += c
        return Counter({w: c for w, c in out.items() if c})

    return P(k, m)


def act_word(word, p: Poly, rho) -> Poly:
    for a in sorted(word, reverse=True):
        if a > 0:
            p = partial(p, a)
        else:
            p = mul_var(p, -a).scale((1 - rho ** (-a)) * (-a))
        if not p:
            break
    return p


def oracle_P(k: int, m: int, p: Poly, rho) -> Poly:
    table = mode_table(k, m, max(p.degree(), 0))
    return poly_sum(act_word(w, p, rho).scale(c) for w, c in table.items())


# -- coefficients ------------------------------------------------------------


def test_falling_and_binomial_examples():
    assert falling(5, 2) == 20
    assert falling(-2, 3) == -24
    assert falling(7, 0) == 1
    assert binom_int(-1, 2) == 1
    with pytest.raises(ValueError):
        falling(3, -1)


def test_coefficient_examples():
    assert coeff_d(3, 0) == mpq(3, 4)
    assert coeff_d(4, 0) == mpq(-3, 2)
    assert coeff_c(3, 1, 1) == 12
    assert coeff_c(3, 0, 2) == -24
    assert coeff_g(3, 0, -1) == mpq(-3, 4)
    for k in range(1, 6):
        for rho in (0, -1, mpq(1, 2)):
            assert coeff_h(k, 0, rho) == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(-20, 20))
def test_coefficient_closed_forms(a):
    assert coeff_d(3, a) == mpq(3 * a * a, 2) - 3 * a + mpq(3, 4)
    assert coeff_d(1, a) == mpq(1, 2)
    for m in range(-5, 6):
        if m % 2:
            assert coeff_c(3, m, a) == 3 * (m * m - 2 * m * a + 2 * m + 2 * a * a + 1)
        else:
            assert coeff_c(3, m, a) == 3 * (m + 2) * (m - 2 * a)
        assert coeff_c(1, m, a) == 1 - (-1) ** (m % 2)
    for k in range(1, 6):
        assert coeff_d(k, a) == -coeff_g(k, a, -1)
        for rho in (0, -1, mpq(1, 2), mpq(-1, 3)):
            assert coeff_g(k, a, rho) == coeff_h(k, a, rho) - coeff_h(k, a + 1, rho)
    for rho in (0, -1, mpq(1, 2)):
        assert coeff_g(1, a, rho) == -1 / (1 - mpq(rho))


def test_d_at_zero():
    from math import factorial

    for k in range(1, 8):
        assert coeff_d(k, 0) == mpq((-1) ** (k - 1) * factorial(k), 2**k)


# -- realizations of P^(k)_m -------------------------------------------------


def test_brute_examples():
    q31 = qfun((3, 1))
    assert apply_P_brute(OpSpec(0, 0, -1), q31) == q31
    assert apply_P_brute(OpSpec(0, 2, -1), q31) == Poly()
    assert apply_P_brute(OpSpec(1, -1, -1), ONE) == t(1).scale(2)
    assert apply_P_brute(OpSpec(2, 0, -1), q31) == q31.scale(16)


def test_brute_rejects_bad_inputs():
    with pytest.raises(ValueError):
        apply_P_brute(OpSpec(2, 0, mpq(1, 2)), ONE)
    with pytest.raises(ValueError):
        apply_P_brute(OpSpec(2, 0, -1), t(2))
    with pytest.raises(ValueError):
        OpSpec(-1, 0)
    with pytest.raises(ValueError):
        OpSpec(1, 0, 1)


def test_mode_examples():
    assert apply_P_modes(OpSpec(1, 4, 0), t(1) * t(2)) == Poly()
    assert apply_P_modes(OpSpec(1, -1, 0), ONE) == t(1)
    assert apply_P_modes(OpSpec(2, 0, -1), qfun((1,))) == t(1).scale(8)


def test_closed_examples():
    assert apply_P_closed_q(1, -1, ()) == LinComb("q", {(1,): 1})
    assert apply_P_closed_q(2, 0, (3, 1)) == LinComb("q", {(3, 1): 16})
    assert apply_P_closed_s(2, 0, ()) == LinComb("schur")
    assert apply_P_closed_s(2, 0, (2, 1)) == LinComb("schur", {(2, 1): 6})


def test_closed_schur_k1_removes_ribbons():
    for lam in partitions_upto(6):
        for m in range(1, 5):
            expect = LinComb.from_labels(
                "schur", [(tuple(x - m if j == i else x for j, x in enumerate(lam)), 1) for i in range(len(lam))]
            )
            assert apply_P_closed_s(1, m, lam) == expect


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_brute_matches_mode_recursion_q(k):
    for lam in strict_partitions_upto(5):
        f = qfun(lam)
        for m in range(-4, 5):
            assert apply_P_brute(OpSpec(k, m, -1), f) == oracle_P(k, m, f, -1), (lam, m)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_brute_matches_mode_recursion_schur(k):
    for lam in partitions_upto(4):
        f = schur(lam)
        for m in range(-4, 5):
            assert apply_P_brute(OpSpec(k, m, 0), f) == oracle_P(k, m, f, 0), (lam, m)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_mode_realization_matches_recursion_generic_rho(k):
    rho = mpq(1, 2)
    for p in [ONE, t(1) * t(2), (t(1) ** 3).scale(mpq(2, 3)) + t(3)]:
        for m in range(-3, 4):
            assert apply_P_modes(OpSpec(k, m, rho), p) == oracle_P(k, m, p, rho)


def test_tight_window_loses_nothing():
    for lam in strict_partitions_upto(5):
        f = qfun(lam)
        d = f.degree()
        for k, m in product((1, 2, 3, 4), range(-5, 6)):
            spec = OpSpec(k, m, -1)
            assert apply_P_brute(spec, f, window=(-d - 3, d + abs(m) + k)) == apply_P_brute(spec, f)
    assert brute_window(2, qfun((3, 1))) == (-4, 2)


# -- named operators ---------------------------------------------------------


def test_named_examples():
    assert apply_named(NamedOp("WBGW"), ONE) == t(1).scale(mpq(1, 8))
    assert apply_named(NamedOp("WKW"), ONE) == (t(1) ** 3).scale(mpq(1, 6)) + t(3).scale(mpq(1, 8))
    assert apply_named(NamedOp("Lhat", -1), t(1).scale(2)) == t(3).scale(12) + (t(1) ** 3).scale(4)
    assert closed_action_named(NamedOp("Lhat", -1), (1,)) == LinComb("q", {(3,): 4, (2, 1): -1})
    assert closed_action_named(NamedOp("W0"), (2,)) == LinComb("schur", {(2,): 2})


def test_named_parameter_validation():
    with pytest.raises(ValueError):
        NamedOp("What", 2)
    with pytest.raises(ValueError):
        NamedOp("Nhat", 1)
    with pytest.raises(ValueError):
        NamedOp("Lhat")
    with pytest.raises(ValueError):
        NamedOp("WKW", 1)
    with pytest.raises(ValueError):
        NamedOp("P", 0)
    with pytest.raises(ValueError):
        apply_named(NamedOp("WKW"), t(2))
    assert NamedOp("What", 1).basis == "q"
    assert NamedOp("W", 1).basis == "schur"


def test_virasoro_display_matches_mode_square():
    # Lhat_m = (1/2) P^(2)_{2m} at rho = -1, L_m = (1/2) P^(2)_m + (m+1)/2 P^(1)_m at rho = 0
    for lam in strict_partitions_upto(5):
        f = qfun(lam)
        for m in range(-3, 4):
            lit = apply_named(NamedOp("Lhat", m), f)
            assert lit == oracle_P(2, 2 * m, f, -1).scale(mpq(1, 2))
    for lam in partitions_upto(4):
        f = schur(lam)
        for m in range(-3, 4):
            lit = apply_named(NamedOp("L", m), f)
            expect = oracle_P(2, m, f, 0).scale(mpq(1, 2)) + oracle_P(1, m, f, 0).scale(mpq(m + 1, 2))
            assert lit == expect


def test_explicit_cubic_displays_match_modes():
    for lam in strict_partitions_upto(6):
        f = qfun(lam)
        for m in (-3, -1, 3):
            assert what_display(m, f) == apply_named(NamedOp("What", m), f), (lam, m)
    with pytest.raises(ValueError):
        what_display(1, ONE)


def test_w0_display_matches_modes():
    for lam in partitions_upto(5):
        f = schur(lam)
        assert apply_named(NamedOp("W0"), f) == apply_named(NamedOp("W", 0), f)


def test_nhat_needs_alternating_sign_in_the_creation_sum():
    # a (-1)^m prefactor on the two-part terms breaks the empty-label case at m = -4
    m = -4
    lit = apply_named(NamedOp("Nhat", m), ONE)
    assert closed_action_named(NamedOp("Nhat", m), ()).to_poly() == lit
    wrong = []
    for a in range(-m + 1):
        c = m * m * (2 * a - 1) + 2 * m * (3 * a * a - a - 1) + 4 * a**3 - 4 * a
        wrong.append(((a, -m - a), mpq((-1) ** (m % 2) * c, 8)))
    assert LinComb.from_labels("q", wrong).to_poly() != lit


def test_named_closed_small_sweep():
    for lam in strict_partitions_upto(5):
        for op in [NamedOp("What", 1), NamedOp("Nhat", -2), NamedOp("WKW"), NamedOp("WKWperp"), NamedOp("What3")]:
            assert closed_action_named(op, lam).to_poly() == apply_named(op, qfun(lam)), (op, lam)
            assert named_via_P(op, lam) == closed_action_named(op, lam)


def test_wbgw_adds_one_box():
    for lam in strict_partitions_upto(7):
        assert wbgw_box_adding(lam) == closed_action_named(NamedOp("WBGW"), lam)
    assert wbgw_box_adding(()) == LinComb("q", {(1,): mpq(1, 16)})
