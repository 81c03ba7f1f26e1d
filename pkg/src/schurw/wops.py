"""W-type operators P^(k)_m and the named operators built from them.

P^(k)(z) = :(d/dz + J(z))^(k-1) J(z): = sum_m P^(k)_m z^(-m-k), with

    J(z) = sum_{n>0} (1 - rho^n) n t_n z^(n-1) + sum_{n>0} d/dt_n z^(-n-1).

Three independent realizations are provided:

* ``apply_P_brute``  sums g_k(b) B*_a * B_b over a finite window (rho in {0, -1});
* ``apply_P_modes``  expands the normal-ordered J-mode products directly (k <= 3);
* ``apply_P_closed_q`` / ``apply_P_closed_s`` assemble the closed actions on
  Q_lambda and S_lambda and straighten the labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Optional, Sequence

from gmpy2 import mpq

from .exactpoly import ONE, ZERO, Poly, mul_var, partial, poly_sum
from .vertex import QBASIS, SCHUR, LinComb, _apply_B, _apply_Bstar, as_rho

# -- coefficient functions ---------------------------------------------------


def falling(n: int, k: int) -> int:
    """[n]_k = n (n-1) ... (n-k+1), with [n]_0 = 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1
    for j in range(k):
        out *= n - j
    return out


def binom_int(n: int, k: int) -> "mpq":
    return mpq(falling(n, k), factorial(k))


@lru_cache(maxsize=None)
def coeff_d(k: int, n: int) -> "mpq":
    if k < 1:
        raise ValueError("k must be >= 1")
    s = sum((-2) ** j * binom_int(n, j) for j in range(k))
    return mpq(factorial(k) * (-1) ** (k - 1), 2**k) * s


def coeff_c(k: int, m: int, n: int) -> "mpq":
    return 2 * coeff_d(k, n - m) - 2 * (-1) ** (m % 2) * coeff_d(k, -n)


def _rho_weights(k: int, rho):
    rho = as_rho(rho)
    return [rho**j / (1 - rho) ** (j + 1) for j in range(k)]


def coeff_h(k: int, b: int, rho) -> "mpq":
    w = _rho_weights(k, rho)
    return factorial(k) * sum((w[j] * binom_int(b, k - j) for j in range(k)), ZERO)


@lru_cache(maxsize=None)
def _coeff_g(k: int, b: int, rho) -> "mpq":
    w = _rho_weights(k, rho)
    return -factorial(k) * sum((w[j] * binom_int(b, k - 1 - j) for j in range(k)), ZERO)


def coeff_g(k: int, b: int, rho) -> "mpq":
    if k < 1:
        raise ValueError("k must be >= 1")
    return _coeff_g(k, b, as_rho(rho))


# -- operator parameters -----------------------------------------------------


@dataclass(frozen=True)
class OpSpec:
    k: int
    m: int
    rho: object = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        object.__setattr__(self, "rho", as_rho(self.rho))


def _require_odd(p: Poly, what: str) -> None:
    if not p.is_odd_supported():
        raise ValueError(f"{what} acts on polynomials in odd-index variables only")


# -- brute force: vertex-operator sums ---------------------------------------


@lru_cache(maxsize=100_000)
def _star(a: int, b: int, p: Poly, rho) -> Poly:
    """(B*_a * B_b) p = B*_a B_b p - (1 - rho) delta_{a,b} delta_{b>=0} p."""
    out = _apply_Bstar(a, _apply_B(b, p, rho), rho)
    if a == b and b >= 0:
        out = out - p.scale(1 - rho)
    return out


def brute_window(m: int, p: Poly) -> tuple:
    """Range of b outside which every B*_{b+m} * B_b kills p."""
    d = p.degree()
    return (-d, d - m)


def apply_P_brute(spec: OpSpec, p: Poly, window: Optional[tuple] = None) -> Poly:
    k, m, rho = spec.k, spec.m, spec.rho
    if rho not in (0, -1):
        raise ValueError("the vertex-operator sum is only finite for rho in {0, -1}")
    if rho == -1:
        _require_odd(p, "the rho = -1 operator")
    if k == 0:
        return p if m == 0 else Poly()
    if not p:
        return Poly()
    lo, hi = window if window is not None else brute_window(m, p)
    parts = []
    for b in range(lo, hi + 1):
        g = _coeff_g(k, b, rho)
        if g:
            parts.append(_star(b + m, b, p, rho).scale(g))
    if m == 0:
        parts.append(p.scale(rho**k * factorial(k) / (1 - rho) ** k))
    return poly_sum(parts)


# -- J-mode expansions -------------------------------------------------------


def apply_J(n: int, p: Poly, rho) -> Poly:
    """Mode J_n: d/dt_n for n > 0, (1 - rho^|n|)|n| t_|n| for n < 0, zero for n = 0."""
    if n > 0:
        return partial(p, n)
    if n == 0:
        return Poly()
    c = (1 - rho ** (-n)) * (-n)
    return mul_var(p, -n).scale(c) if c else Poly()


def _normal_product(modes: tuple, p: Poly, rho) -> Poly:
    # derivations first, multiplications last
    for n in sorted(modes, reverse=True):
        p = apply_J(n, p, rho)
        if not p:
            break
    return p


def mode_power(order: int, m: int, p: Poly, rho) -> Poly:
    """sum over i_1 + ... + i_order = m of :J_{i_1} ... J_{i_order}: applied to p."""
    rho = as_rho(rho)
    if not p:
        return Poly()
    d = p.degree()
    # positive modes total at most d, so every negative mode is >= m - d
    idx = [i for i in range(min(m - d, -1), d + 1) if i]
    counts: Counter = Counter()
    for head in product(idx, repeat=order - 1):
        last = m - sum(head)
        if last == 0 or last > d or last < m - d:
            continue
        counts[tuple(sorted(head + (last,)))] += 1
    return poly_sum(_normal_product(key, p, rho).scale(c) for key, c in counts.items())


def apply_P_modes(spec: OpSpec, p: Poly) -> Poly:
    k, m, rho = spec.k, spec.m, spec.rho
    if k == 0:
        return p if m == 0 else Poly()
    if k > 3:
        raise ValueError("explicit mode expansions are kept for k <= 3 only")
    J = apply_J(m, p, rho)
    if k == 1:
        return J
    X = mode_power(2, m, p, rho)
    if k == 2:
        return X + J.scale(-m - 1)
    Y = mode_power(3, m, p, rho)
    return Y + X.scale(mpq(3 * (-m - 2), 2)) + J.scale((m + 1) * (m + 2))


# -- closed actions on labels ------------------------------------------------


def _shift(lam: tuple, i: int, by: int) -> tuple:
    return lam[:i] + (lam[i] + by,) + lam[i + 1:]


def apply_P_closed_q(k: int, m: int, lam: Sequence[int]) -> LinComb:
    """P^(k)_m Q_lambda over strict partitions (rho = -1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = tuple(lam)
    terms = [(_shift(lam, i, -m), coeff_c(k, m, x)) for i, x in enumerate(lam)]
    if m < 0:
        terms += [(lam + (a, -m - a), (-1) ** ((m - a) % 2) * coeff_d(k, a)) for a in range(-m + 1)]
    return LinComb.from_labels(QBASIS, terms)


def _hook_label(lam: tuple, n: int, tail: int) -> tuple:
    return lam + (n,) + (1,) * tail


def apply_P_closed_s(k: int, m: int, lam: Sequence[int]) -> LinComb:
    """P^(k)_m S_lambda over partitions (rho = 0)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = tuple(lam)
    l = len(lam)
    terms = [(_shift(lam, i, -m), k * falling(x - m - i - 1, k - 1)) for i, x in enumerate(lam)]
    if m == 0:
        terms.append((lam, falling(-l, k)))
    if m < 0:
        terms += [
            (_hook_label(lam, n, -m - n), (-1) ** ((m - n) % 2) * k * falling(n - l - 1, k - 1))
            for n in range(1, -m + 1)
        ]
    return LinComb.from_labels(SCHUR, terms)


# -- named operators ---------------------------------------------------------

NAMES = ("P", "L", "Lhat", "W", "What", "Nhat", "W0", "WBGW", "WKW", "WKWperp", "What3")
HATTED = {"Lhat", "What", "Nhat", "WBGW", "WKW", "WKWperp", "What3"}
_NEEDS_M = {"L", "Lhat", "W", "What", "Nhat"}


@dataclass(frozen=True)
class NamedOp:
    name: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.name not in NAMES or self.name == "P":
            raise ValueError(f"unknown named operator {self.name!r}")
        if self.name in _NEEDS_M:
            if self.m is None:
                raise ValueError(f"{self.name} needs a mode index m")
            if self.name == "What" and self.m % 2 == 0:
                raise ValueError("What is defined for odd m only")
            if self.name == "Nhat" and self.m % 2:
                raise ValueError("Nhat is defined for even m only")
        elif self.m is not None:
            raise ValueError(f"{self.name} takes no mode index")

    @property
    def basis(self) -> str:
        return QBASIS if self.name in HATTED else SCHUR


def _odd_range(lo: int, hi: int):
    lo += 1 - lo % 2
    return range(lo, hi + 1, 2)


def _virasoro(m: int, p: Poly, step: int, odd: bool, scale_t: int, scale_tt) -> Poly:
    # sum_a scale_t a t_a d_{a+M} + (1/2) sum d_k d_{M-k} + scale_tt sum k(-M-k) t_k t_{-M-k}, M = step*m
    M = step * m
    d = p.degree()
    pick = _odd_range if odd else (lambda lo, hi: range(lo, hi + 1))
    parts = []
    for a in pick(max(0, -M) + 1, d - M):
        parts.append(mul_var(partial(p, a + M), a).scale(scale_t * a))
    if M > 0:
        for k in pick(1, M - 1):
            parts.append(partial(partial(p, k), M - k).scale(mpq(1, 2)))
    if M < 0:
        for k in pick(1, -M - 1):
            parts.append(mul_var(mul_var(p, k), -M - k).scale(scale_tt * k * (-M - k)))
    return poly_sum(parts)


def _what_display(m: int, p: Poly) -> Poly:
    # sum_{a,b odd} 4ab t_a t_b d_{a+b+m} + 2(a+b-m) t_{a+b-m} d_a d_b, plus the cubic correction
    d = p.degree()
    parts = []
    for a in _odd_range(1, d + 1 - m):
        for b in _odd_range(1, d + 1 - m - a):
            n = a + b + m
            if 1 <= n <= d:
                parts.append(mul_var(mul_var(partial(p, n), a), b).scale(4 * a * b))
    for a in _odd_range(1, d):
        for b in _odd_range(1, d - a):
            n = a + b - m
            if n >= 1:
                parts.append(mul_var(partial(partial(p, a), b), n).scale(2 * n))
    if m == -3:
        parts.append(mul_var(mul_var(mul_var(p, 1), 1), 1).scale(mpq(8, 3)))
    elif m == 3:
        parts.append(partial(partial(partial(p, 1), 1), 1).scale(mpq(1, 3)))
    return poly_sum(parts)


def what_display(m: int, p: Poly) -> Poly:
    """Explicit bilinear form of What_m for m in {-1, -3, 3}."""
    if m not in (-1, -3, 3):
        raise ValueError("explicit display only for m in {-1, -3, 3}")
    _require_odd(p, "What")
    return _what_display(m, p)


def _w0_display(p: Poly) -> Poly:
    d = p.degree()
    parts = []
    for a in range(1, d):
        for b in range(1, d - a + 1):
            parts.append(mul_var(mul_var(partial(p, a + b), a), b).scale(a * b))
            parts.append(mul_var(partial(partial(p, a), b), a + b).scale(a + b))
    return poly_sum(parts)


def _nhat(m: int, p: Poly) -> Poly:
    P = lambda k: apply_P_brute(OpSpec(k, m, -1), p)
    return (P(4) + P(3).scale(2 * (m + 3)) + P(2).scale((m + 2) * (m + 3))).scale(mpq(1, 4))


def apply_named(op: NamedOp, p: Poly) -> Poly:
    """Literal differential-operator action of a named operator."""
    name, m = op.name, op.m
    if name in HATTED:
        _require_odd(p, name)
    if name == "L":
        return _virasoro(m, p, 1, False, 1, mpq(1, 2))
    if name == "Lhat":
        return _virasoro(m, p, 2, True, 2, 2)
    if name == "W":
        return mode_power(3, m, p, ZERO).scale(mpq(1, 3))
    if name == "What":
        return mode_power(3, m, p, mpq(-1)).scale(mpq(1, 3))
    if name == "Nhat":
        return _nhat(m, p)
    if name == "W0":
        return _w0_display(p)
    if name == "WBGW":
        return _what_display(-1, p).scale(mpq(1, 4)) + mul_var(p, 1).scale(mpq(1, 8))
    if name == "WKW":
        t1cubed = mul_var(mul_var(mul_var(p, 1), 1), 1)
        return (
            _what_display(-3, p).scale(mpq(1, 12))
            - t1cubed.scale(mpq(1, 18))
            + mul_var(p, 3).scale(mpq(1, 8))
        )
    if name == "WKWperp":
        d111 = partial(partial(partial(p, 1), 1), 1)
        return (
            _what_display(3, p).scale(mpq(1, 12))
            - d111.scale(mpq(1, 144))
            + partial(p, 3).scale(mpq(1, 48))
        )
    if name == "What3":
        return _what_display(3, p)
    raise AssertionError(name)


# closed formulas stated per operator


def _q_mul_t(n: int, lam: tuple) -> list:
    """Labelled terms of t_n Q_lambda for odd n > 0."""
    out = [(_shift(lam, i, n), mpq(1, n)) for i in range(len(lam))]
    out += [(lam + (a, n - a), mpq((-1) ** ((n - a) % 2), 4 * n)) for a in range(n + 1)]
    return out


def _q_mul_t_many(ns: Sequence[int], labelled: list) -> list:
    for n in ns:
        labelled = [(mu, c * d) for lam, c in labelled for mu, d in _q_mul_t(n, lam)]
    return labelled


def _what_terms(m: int, lam: tuple) -> list:
    terms = [
        (_shift(lam, i, -m), 2 * x * x - 2 * m * x + mpq((m + 1) * (m - 1), 3))
        for i, x in enumerate(lam)
    ]
    if m < 0:
        for a in range(-m + 1):
            c = mpq(a * a, 2) + mpq(m * a, 2) + mpq(m * m - 1, 12)
            terms.append((lam + (a, -m - a), (-1) ** ((a + 1) % 2) * c))
    return terms


def _nhat_terms(m: int, lam: tuple) -> list:
    terms = [
        (_shift(lam, i, -m), 2 * x**3 - 3 * m * x * x + m * m * x - m * x - 2 * x + mpq(m * m, 2) + m)
        for i, x in enumerate(lam)
    ]
    if m < 0:
        for a in range(-m + 1):
            c = m * m * (2 * a - 1) + 2 * m * (3 * a * a - a - 1) + 4 * a**3 - 4 * a
            terms.append((lam + (a, -m - a), mpq((-1) ** (a % 2) * c, 8)))
    return terms


def _wkwperp_terms(lam: tuple) -> list:
    l = len(lam)
    terms = [(_shift(lam, i, -3), mpq((2 * x - 1) * (2 * x - 5), 24)) for i, x in enumerate(lam)]
    for i in range(l):
        for j in range(l):
            if i != j:
                terms.append((_shift(_shift(lam, i, -2), j, -1), mpq(-1, 6)))
    for i in range(l):
        for j in range(l):
            for k in range(l):
                if len({i, j, k}) == 3:
                    terms.append((_shift(_shift(_shift(lam, i, -1), j, -1), k, -1), mpq(-1, 18)))
    return terms


def _schur_L_terms(m: int, lam: tuple) -> list:
    l = len(lam)
    terms = [(_shift(lam, i, -m), x - (i + 1) + mpq(1 - m, 2)) for i, x in enumerate(lam)]
    if m < 0:
        for n in range(1, -m + 1):
            terms.append((_hook_label(lam, n, -m - n), (-1) ** ((m - n) % 2) * (n - l + mpq(m - 1, 2))))
    if m == 0:
        terms.append((lam, mpq(l * l, 2)))
    return terms


def _schur_W_terms(m: int, lam: tuple) -> list:
    l = len(lam)
    sixth, third = mpq(1, 6), mpq(1, 3)
    terms = []
    for idx, x in enumerate(lam):
        i = idx + 1
        c = m * m * sixth + i * m - x * m - mpq(m, 2) + i * i - 2 * i * x - i + x * x + x + third
        terms.append((_shift(lam, idx, -m), c))
    if m < 0:
        for n in range(1, -m + 1):
            c = m * m * sixth + m * n - l * m - mpq(m, 2) + n * n - 2 * l * n - n + l * l + l + third
            terms.append((_hook_label(lam, n, -m - n), (-1) ** ((m - n) % 2) * c))
    if m == 0:
        terms.append((lam, mpq(-(l**3), 3)))
    return terms


def _lhat_terms(m: int, lam: tuple) -> list:
    terms = [(_shift(lam, i, -2 * m), 2 * (x - m)) for i, x in enumerate(lam)]
    if m < 0:
        terms += [(lam + (a, -2 * m - a), mpq((-1) ** (a % 2) * (2 * a - 1), 4)) for a in range(-2 * m + 1)]
    return terms


def _wbgw_terms(lam: tuple) -> list:
    terms = [(_shift(lam, i, 1), mpq((2 * x + 1) ** 2, 8)) for i, x in enumerate(lam)]
    terms.append((lam + (1,), mpq(1, 16)))
    return terms


def closed_action_named(op: NamedOp, lam: Sequence[int]) -> LinComb:
    """Closed action of a named operator on Q_lambda (hatted) or S_lambda."""
    lam = tuple(lam)
    name, m = op.name, op.m
    if name == "Lhat":
        terms = _lhat_terms(m, lam)
    elif name == "What":
        terms = _what_terms(m, lam)
    elif name == "What3":
        terms = _what_terms(3, lam)
    elif name == "Nhat":
        terms = _nhat_terms(m, lam)
    elif name == "WBGW":
        terms = _wbgw_terms(lam)
    elif name == "WKW":
        terms = [(mu, c / 12) for mu, c in _what_terms(-3, lam)]
        terms += [(mu, c * mpq(-1, 18)) for mu, c in _q_mul_t_many((1, 1, 1), [(lam, ONE)])]
        terms += [(mu, c / 8) for mu, c in _q_mul_t(3, lam)]
    elif name == "WKWperp":
        terms = _wkwperp_terms(lam)
    elif name == "L":
        terms = _schur_L_terms(m, lam)
    elif name == "W":
        terms = _schur_W_terms(m, lam)
    elif name == "W0":
        terms = _schur_W_terms(0, lam)
    else:
        raise AssertionError(name)
    return LinComb.from_labels(op.basis, terms)


def wbgw_box_adding(lam: Sequence[int]) -> LinComb:
    """W_BGW Q_lambda for strict lambda as a sum over strict mu = lambda + one box."""
    lam = tuple(lam)
    out = {}
    for i in range(len(lam) + 1):
        mu = _shift(lam, i, 1) if i < len(lam) else lam + (1,)
        if any(a <= b for a, b in zip(mu, mu[1:])):
            continue
        out[mu] = mpq((2 * mu[i] - 1) ** 2, 8 * 2 ** (len(mu) - len(lam)))
    return LinComb(QBASIS, out)


def named_via_P(op: NamedOp, lam: Sequence[int]) -> LinComb:
    """Named operator action assembled as a rational combination of closed P^(k)_m actions."""
    lam = tuple(lam)
    name, m = op.name, op.m
    if op.basis == QBASIS:
        P = lambda k, mm: apply_P_closed_q(k, mm, lam)
    else:
        P = lambda k, mm: apply_P_closed_s(k, mm, lam)

    def cubic(mm):
        return P(3, mm).scale(mpq(1, 3)) + P(2, mm).scale(mpq(mm + 2, 2)) + P(1, mm).scale(mpq((mm + 1) * (mm + 2), 6))

    if name == "Lhat":
        return P(2, 2 * m).scale(mpq(1, 2))
    if name in ("What", "W", "W0", "What3"):
        return cubic({"W0": 0, "What3": 3}.get(name, m))
    if name == "Nhat":
        return (P(4, m) + P(3, m).scale(2 * (m + 3)) + P(2, m).scale((m + 2) * (m + 3))).scale(mpq(1, 4))
    if name == "L":
        return P(2, m).scale(mpq(1, 2)) + P(1, m).scale(mpq(m + 1, 2))
    if name == "WBGW":
        # t_1 = (1/2) J_{-1} on the odd subring
        return cubic(-1).scale(mpq(1, 4)) + P(1, -1).scale(mpq(1, 16))
    if name == "WKW":
        t1 = lambda lc: LinComb.from_labels(
            QBASIS, [(mu, c * d) for nu, c in lc.items() for mu, d in apply_P_closed_q(1, -1, nu).scale(mpq(1, 2)).items()]
        )
        t1cubed = t1(t1(P(1, -1).scale(mpq(1, 2))))
        return cubic(-3).scale(mpq(1, 12)) - t1cubed.scale(mpq(1, 18)) + P(1, -3).scale(mpq(1, 48))
    if name == "WKWperp":
        d1 = lambda lc: LinComb.from_labels(
            QBASIS, [(mu, c * d) for nu, c in lc.items() for mu, d in apply_P_closed_q(1, 1, nu).items()]
        )
        d111 = d1(d1(P(1, 1)))
        return cubic(3).scale(mpq(1, 12)) - d111.scale(mpq(1, 144)) + P(1, 3).scale(mpq(1, 48))
    raise AssertionError(name)
