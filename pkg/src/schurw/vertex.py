"""Vertex operators B_n, B*_n and the Hall-Littlewood / Schur / Q-functions they build.

For a parameter rho != 1,

    B(z)  = exp( sum (1-rho^m) t_m z^m) exp(-sum d_m z^{-m} / m) = sum_n B_n  z^n
    B*(z) = exp(-sum (1-rho^m) t_m z^m) exp( sum d_m z^{-m} / m) = sum_n B*_n z^{-n}

The derivation part is a translation t_m -> t_m -/+ w^m/m with w = 1/z, so both
operators are evaluated by shifting the polynomial and pairing each w-power with
one coefficient of the multiplicative exponential.  Every sum is finite.

rho = 0 gives Schur functions S_lambda, rho = -1 gives Schur Q-functions.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .combinat import drop_trailing_zeros, partitions, strict_partitions
from .exactpoly import (
    ONE,
    ZERO,
    Poly,
    _trim,
    homogeneous_parts,
    mul_var,
    poly_sum,
    rat,
    rat_str,
)

SCHUR = "schur"
QBASIS = "q"


def as_rho(rho) -> "mpq":
    rho = rat(rho)
    if rho == 1:
        raise ValueError("rho = 1 is not allowed")
    return rho


# -- exponential factors -----------------------------------------------------


@lru_cache(maxsize=None)
def _exp_coeff(i: int, rho, sign: int) -> Poly:
    """Coefficient of z^i in exp(sign * sum_m (1 - rho^m) t_m z^m)."""
    if i == 0:
        return Poly.const(1)
    parts = []
    for m in range(1, i + 1):
        c = 1 - rho**m
        if c:
            parts.append(mul_var(_exp_coeff(i - m, rho, sign), m).scale(m * c))
    return poly_sum(parts).scale(mpq(sign, i))


@lru_cache(maxsize=400_000)
def _shift_monomial(mono: tuple, sign: int) -> tuple:
    """Expand prod_m (t_m + sign w^m / m)^{e_m} into (w-power, monomial, factor) triples."""
    partial = [(0, [], ONE)]
    for m, e in enumerate(mono, 1):
        step = mpq(sign, m)
        grown = []
        for w, exps, f in partial:
            for r in range(e + 1):
                grown.append((w + m * r, exps + [e - r], f * comb(e, r) * step**r))
        partial = grown
    return tuple((w, _trim(exps), f) for w, exps, f in partial)


@lru_cache(maxsize=4096)
def _shifted(p: Poly, sign: int) -> dict:
    """p(t_m + sign w^m/m), split by powers of w."""
    acc: dict = defaultdict(dict)
    for mono, c in p.items():
        for w, m, f in _shift_monomial(mono, sign):
            bucket = acc[w]
            bucket[m] = bucket.get(m, ZERO) + c * f
    return {w: Poly(t) for w, t in acc.items()}


@lru_cache(maxsize=20000)
def _apply_B(n: int, p: Poly, rho) -> Poly:
    parts = []
    for j, comp in _shifted(p, -1).items():
        if n + j >= 0 and comp:
            parts.append(_exp_coeff(n + j, rho, 1) * comp)
    return poly_sum(parts)


@lru_cache(maxsize=40000)
def _apply_Bstar(n: int, p: Poly, rho) -> Poly:
    parts = []
    for j, comp in _shifted(p, 1).items():
        if j - n >= 0 and comp:
            parts.append(_exp_coeff(j - n, rho, -1) * comp)
    return poly_sum(parts)


def apply_B(n: int, p: Poly, rho) -> Poly:
    """Coefficient of z^n in B(z) applied to p."""
    return _apply_B(n, p, as_rho(rho))


def apply_Bstar(n: int, p: Poly, rho) -> Poly:
    """Coefficient of z^{-n} in B*(z) applied to p."""
    return _apply_Bstar(n, p, as_rho(rho))


# -- character polynomials ---------------------------------------------------


@lru_cache(maxsize=None)
def _hl(lam: tuple, rho) -> Poly:
    if not lam:
        return Poly.const(1)
    return _apply_B(lam[0], _hl(lam[1:], rho), rho)


def hall_littlewood(lam: Sequence[int], rho) -> Poly:
    """H_lambda = B_{lambda_1} ... B_{lambda_l} . 1 for any integer vector lambda."""
    return _hl(tuple(lam), as_rho(rho))


def schur(lam: Sequence[int]) -> Poly:
    return _hl(tuple(lam), ZERO)


def qfun(lam: Sequence[int]) -> Poly:
    return _hl(tuple(lam), mpq(-1))


# -- linear combinations of basis functions ----------------------------------


class LinComb:
    """Finite rational combination of S_mu (basis "schur") or Q_mu (basis "q")."""

    __slots__ = ("basis", "_terms")

    def __init__(self, basis: str, terms: Mapping | None = None):
        if basis not in (SCHUR, QBASIS):
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean = {}
        for lam, c in (terms or {}).items():
            c = rat(c)
            if c:
                clean[tuple(lam)] = c
        self._terms = clean

    @classmethod
    def from_labels(cls, basis: str, labelled: Iterable) -> "LinComb":
        """Straighten every (integer vector, coefficient) pair and collect."""
        straighten = straighten_q if basis == QBASIS else straighten_schur
        acc: dict = defaultdict(lambda: ZERO)
        for lam, c in labelled:
            c = rat(c)
            if not c:
                continue
            for mu, d in straighten(lam).items():
                acc[mu] += c * d
        return cls(basis, acc)

    def items(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0])))

    def coeff(self, lam: Sequence[int]):
        return self._terms.get(tuple(lam), ZERO)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.basis == other.basis and self._terms == other._terms

    def _check(self, other: "LinComb") -> None:
        if self.basis != other.basis:
            raise ValueError("cannot combine different bases")

    def __add__(self, other: "LinComb") -> "LinComb":
        self._check(other)
        acc = dict(self._terms)
        for lam, c in other._terms.items():
            acc[lam] = acc.get(lam, ZERO) + c
        return LinComb(self.basis, acc)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def scale(self, c) -> "LinComb":
        c = rat(c)
        return LinComb(self.basis, {lam: v * c for lam, v in self._terms.items()})

    __mul__ = __rmul__ = scale

    def is_multiple_of(self, lam: Sequence[int]) -> bool:
        return set(self._terms) <= {tuple(lam)}

    def to_poly(self) -> Poly:
        build = qfun if self.basis == QBASIS else schur
        return poly_sum(build(lam).scale(c) for lam, c in self._terms.items())

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"coeff": rat_str(c), "partition": list(lam)} for lam, c in self.items()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "LinComb":
        return cls(doc["basis"], {tuple(r["partition"]): rat(r["coeff"]) for r in doc["terms"]})

    def __repr__(self) -> str:
        name = "Q" if self.basis == QBASIS else "S"
        if not self._terms:
            return "0"
        return " + ".join(f"{rat_str(c)}*{name}{lam}" for lam, c in self.items())


def straighten_schur(lam: Sequence[int]) -> LinComb:
    """S_lambda = +/- S_nu via the staircase rule, or 0."""
    shifted = [x - i for i, x in enumerate(lam, 1)]
    if len(set(shifted)) < len(shifted):
        return LinComb(SCHUR)
    order = sorted(range(len(shifted)), key=lambda i: -shifted[i])
    sign = 1
    seen = list(order)
    # parity of the sorting permutation
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    nu = drop_trailing_zeros([shifted[k] + i for i, k in enumerate(order, 1)])
    if nu and nu[-1] < 0:
        return LinComb(SCHUR)
    return LinComb(SCHUR, {nu: sign})


@lru_cache(maxsize=None)
def _straighten_q(lam: tuple) -> tuple:
    lam = drop_trailing_zeros(lam)
    if not lam:
        return (((), ONE),)
    if lam[-1] < 0:
        return ()
    for i in range(len(lam) - 1):
        a, b = lam[i], lam[i + 1]
        if a > b:
            continue
        rest = lam[:i] + lam[i + 2:]
        if a == b:
            # B_a B_a = 0 for a != 0 and B_0 B_0 = 1
            return _straighten_q(rest) if a == 0 else ()
        acc: dict = defaultdict(lambda: ZERO)
        for mu, c in _straighten_q(lam[:i] + (b, a) + lam[i + 2:]):
            acc[mu] -= c
        if a == -b:
            for mu, c in _straighten_q(rest):
                acc[mu] += 2 * (-1) ** (a % 2) * c
        return tuple((mu, c) for mu, c in acc.items() if c)
    return ((lam, ONE),)


def straighten_q(lam: Sequence[int]) -> LinComb:
    """Expand Q_lambda over strict partitions using B_m B_n = -B_n B_m + 2(-1)^m delta_{m,-n}."""
    return LinComb(QBASIS, dict(_straighten_q(tuple(lam))))


# -- pairings and basis expansion --------------------------------------------


def _pairing(f: Poly, g: Poly, scale: int) -> "mpq":
    # <t^a, t^b> = delta_ab prod_m e_m! (scale*m)^(-e_m)
    if len(f) > len(g):
        f, g = g, f
    gt = g.terms
    total = ZERO
    for mono, c in f.items():
        d = gt.get(mono)
        if d is None:
            continue
        w = ONE
        for m, e in enumerate(mono, 1):
            if e:
                w *= mpq(factorial(e), (scale * m) ** e)
        total += c * d * w
    return total


def q_inner(f: Poly, g: Poly) -> "mpq":
    """Pairing on Q[t_1, t_3, ...] with t_m adjoint to (1/2m) d/dt_m."""
    if not (f.is_odd_supported() and g.is_odd_supported()):
        raise ValueError("q_inner is only defined on odd-index variables")
    return _pairing(f, g, 2)


def hall_inner(f: Poly, g: Poly) -> "mpq":
    """Pairing with t_m adjoint to (1/m) d/dt_m; Schur functions are orthonormal."""
    return _pairing(f, g, 1)


def expand_in_basis(p: Poly, basis: str) -> LinComb:
    if basis == QBASIS:
        if not p.is_odd_supported():
            raise ValueError("Q-expansion needs a polynomial in odd-index variables")
        coeffs = {}
        for d, part in homogeneous_parts(p).items():
            for lam in strict_partitions(d):
                c = q_inner(qfun(lam), part)
                if c:
                    coeffs[lam] = c / 2 ** len(lam)
        return LinComb(QBASIS, coeffs)
    if basis == SCHUR:
        coeffs = {}
        for d, part in homogeneous_parts(p).items():
            for lam in partitions(d):
                c = hall_inner(schur(lam), part)
                if c:
                    coeffs[lam] = c
        return LinComb(SCHUR, coeffs)
    raise ValueError(f"unknown basis {basis!r}")


# -- evaluation at a point without building the polynomial -------------------


@lru_cache(maxsize=None)
def _point_series(rho, values: tuple, n_max: int) -> tuple:
    """Coefficients f_0..f_{n_max} of exp(sum (1-rho^m) a_m z^m)."""
    a = dict(values)
    f = [ONE]
    for n in range(1, n_max + 1):
        s = ZERO
        for m, v in a.items():
            if m <= n:
                s += m * (1 - rho**m) * v * f[n - m]
        f.append(s / n)
    return tuple(f)


def hl_specialize(lam: Sequence[int], rho, values: Mapping[int, object]) -> "mpq":
    """H_lambda(t; rho) at t_n = values[n], from the generating function

        B(z_1)...B(z_l) . 1 = prod_{i<j} (1 - z_j/z_i)/(1 - rho z_j/z_i) prod_i F(z_i)

    where F(z) = exp(sum (1-rho^m) t_m z^m).  The coefficient of z^lambda is
    extracted one variable at a time, last variable first; each step leaves
    negative powers of the remaining variables that shift their targets.
    """
    rho = as_rho(rho)
    lam = tuple(lam)
    if not lam:
        return ONE
    point = tuple(sorted((int(k), rat(v)) for k, v in values.items() if rat(v)))
    bound = sum(abs(x) for x in lam) + 1
    f = _point_series(rho, point, bound + sum(max(x, 0) for x in lam))
    support = [n for n, c in enumerate(f) if c]
    # r_k: coefficients of (1 - x)/(1 - rho x)
    r_cache: dict = {0: ONE}

    def r(k: int):
        if k not in r_cache:
            r_cache[k] = rho**k - rho ** (k - 1)
        return r_cache[k]

    def fc(n: int):
        return f[n] if 0 <= n < len(f) else ZERO

    states = {(0,) * len(lam): ONE}
    for i in range(len(lam) - 1, 0, -1):
        new: dict = defaultdict(lambda: ZERO)
        for shifts, c in states.items():
            target = lam[i] + shifts[i]
            if target < 0:
                continue
            for ks, w in _distribute(i, target, r, support):
                key = tuple(s + k for s, k in zip(shifts[:i], ks))
                new[key] += c * w * fc(target - sum(ks))
        states = {k: v for k, v in new.items() if v}
    total = ZERO
    for shifts, c in states.items():
        total += c * fc(lam[0] + shifts[0])
    return total


def _distribute(slots: int, budget: int, r, support: list):
    """Yield (k_1..k_slots, prod r_{k_j}) with sum k <= budget and budget - sum k in support."""
    out = []

    def rec(prefix: list, weight, left: int):
        if len(prefix) == slots - 1:
            for n in support:
                if n > left:
                    break
                k = left - n
                w = weight * r(k)
                if w:
                    out.append((tuple(prefix) + (k,), w))
            return
        for k in range(left + 1):
            w = weight * r(k)
            if w:
                prefix.append(k)
                rec(prefix, w, left - k)
                prefix.pop()

    rec([], ONE, budget)
    return out
