"""BGW and Kontsevich-Witten tau functions as truncated hbar-series, and the E/A coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Mapping, Sequence

from gmpy2 import mpq

from .combinat import drop_trailing_zeros, is_strict, strict_partitions
from .exactpoly import ONE, ZERO, Poly, poly_sum
from .vertex import _straighten_q, hl_specialize, qfun
from .wops import NamedOp, apply_named

A_POINT = {3: mpq(1, 3)}


class TauDiscrepancy(AssertionError):
    """The cut-and-join and closed expansions disagree."""


@dataclass
class Series:
    """Truncated power series in hbar with polynomial coefficients."""

    order: int
    components: dict = field(default_factory=dict)

    def __getitem__(self, n: int) -> Poly:
        return self.components.get(n, Poly())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        keys = set(self.components) | set(other.components)
        return self.order == other.order and all(self[n] == other[n] for n in keys)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "components": {str(n): self[n].to_json() for n in range(self.order + 1)},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "Series":
        comps = {int(n): Poly.from_json(p) for n, p in doc["components"].items()}
        return cls(int(doc["order"]), comps)


# -- coefficient machinery ---------------------------------------------------


def E_coeff(lam: Sequence[int]) -> "mpq":
    """Q_lambda(1, 0, 0, ...) for a strict partition, by the product formula."""
    lam = tuple(lam)
    out = mpq(2 ** sum(lam), prod(factorial(x) for x in lam))
    for i, a in enumerate(lam):
        for b in lam[i + 1:]:
            out *= mpq(a - b, a + b)
    return out


@lru_cache(maxsize=None)
def _A_strict(mu: tuple) -> "mpq":
    return hl_specialize(mu, -1, A_POINT)


@lru_cache(maxsize=None)
def _A_coeff(lam: tuple) -> "mpq":
    if sum(lam) % 3:
        return ZERO
    return sum((c * _A_strict(mu) for mu, c in _straighten_q(lam)), ZERO)


def A_coeff(lam: Sequence[int]) -> "mpq":
    """Q_lambda(0, 1/3, 0, ...) for any integer vector, through straightening."""
    return _A_coeff(tuple(lam))


def A_pair(a: int, b: int) -> "mpq":
    """Closed form of A_(a, b)."""
    if (a + b) % 3:
        return ZERO
    if b < 0:
        return ZERO
    if a < 0:
        return 2 * (-1) ** (a % 2) if a == -b else ZERO
    if a == b == 0:
        return ONE
    r = a % 3
    if r == 0:
        k1, k2 = a // 3, b // 3
        return mpq(2, 3) ** (k1 + k2) / (factorial(k1) * factorial(k2)) * mpq(k1 - k2, k1 + k2)
    if r == 1:
        m, n = a // 3, (b - 2) // 3
        return mpq(2, 3) ** (m + n + 1) * mpq(2, factorial(m) * factorial(n) * (m + n + 1))
    return -A_pair(b, a)


@lru_cache(maxsize=None)
def _A_pfaffian(lam: tuple) -> "mpq":
    l = len(lam)
    if l == 0:
        return ONE
    if l == 2:
        return A_pair(*lam)
    if sum(lam) % 3:
        return ZERO
    last = lam[-1]
    total = ZERO
    for m in range(l - 1):
        head = A_pair(lam[m], last)
        if head:
            rest = lam[:m] + lam[m + 1:-1]
            total += (-1) ** (m % 2) * head * _A_pfaffian(rest)
    return total


def A_pfaffian(lam: Sequence[int]) -> "mpq":
    """A_lambda by expansion along the last component (even length only)."""
    lam = tuple(lam)
    if len(lam) % 2:
        raise ValueError("the recursion needs an even-length label")
    return _A_pfaffian(lam)


def is_weakly_positive(lam: Sequence[int]) -> bool:
    return all(x >= 0 for x in lam) and sum(1 for x in lam if x == 0) <= 1


@lru_cache(maxsize=None)
def _chains(mu: tuple) -> int:
    if not mu:
        return 1
    total = 0
    for i in range(len(mu)):
        nu = drop_trailing_zeros(mu[:i] + (mu[i] - 1,) + mu[i + 1:])
        if is_strict(nu):
            total += _chains(nu)
    return total


def chain_count(mu: Sequence[int]) -> int:
    """Number of ways to grow mu box by box through strict partitions."""
    mu = tuple(mu)
    if not is_strict(mu):
        return 0
    return _chains(mu)


def double_fact(n: int) -> "mpq":
    """n!! for odd n, extended by (-1)!! = 1 and (-2k-1)!! = (-1)^k / (2k-1)!!."""
    if n % 2 == 0:
        raise ValueError("double factorial is defined here for odd integers only")
    if n >= -1:
        return mpq(prod(range(n, 0, -2)))
    k = (-n - 1) // 2
    return mpq((-1) ** k, prod(range(2 * k - 1, 0, -2)))


def _dfact_product(lam: Sequence[int]) -> "mpq":
    out = ONE
    for x in lam:
        out *= double_fact(2 * x - 1)
    return out


def a_coeff(lam: Sequence[int]) -> "mpq":
    """hbar-stripped a_lambda = A_{2 lambda} (1/16)^{|lambda|/3} prod (2 lambda_i - 1)!!."""
    lam = tuple(lam)
    w = sum(lam)
    if w % 3:
        return ZERO
    A = A_coeff(tuple(2 * x for x in lam))
    if not A:
        return ZERO
    return A * mpq(1, 16) ** (w // 3) * _dfact_product(lam)


# -- tau functions -----------------------------------------------------------


def _cutjoin(op: NamedOp, order: int) -> Series:
    v = Poly.const(1)
    comps = {0: v}
    for n in range(1, order + 1):
        v = apply_named(op, v)
        comps[n] = v.scale(mpq(1, factorial(n)))
    return Series(order, comps)


def _bgw_closed(order: int) -> Series:
    comps = {}
    for n in range(order + 1):
        terms = []
        for lam in strict_partitions(n):
            c = mpq(1, 2 ** len(lam) * 16**n) * E_coeff(lam) * _dfact_product(lam) ** 2
            terms.append(qfun(lam).scale(c))
        comps[n] = poly_sum(terms)
    return Series(order, comps)


def _kw_closed(order: int) -> Series:
    comps = {}
    for n in range(order + 1):
        terms = []
        for lam in strict_partitions(3 * n):
            A = A_coeff(tuple(2 * x for x in lam))
            if A:
                c = mpq(1, 2 ** len(lam) * 16**n) * _dfact_product(lam) * A
                terms.append(qfun(lam).scale(c))
        comps[n] = poly_sum(terms)
    return Series(order, comps)


def _run(name: str, cutjoin, closed, order: int, method: str) -> Series:
    if order < 0:
        raise ValueError("order must be non-negative")
    if method == "cutjoin":
        return cutjoin(order)
    if method == "closed":
        return closed(order)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a, b = cutjoin(order), closed(order)
    for n in range(order + 1):
        if a[n] != b[n]:
            raise TauDiscrepancy(f"{name}: hbar^{n} components differ: {a[n]!r} vs {b[n]!r}")
    return a


def tau_bgw(order: int, method: str = "both") -> Series:
    return _run("BGW", lambda n: _cutjoin(NamedOp("WBGW"), n), _bgw_closed, order, method)


def tau_kw(order: int, method: str = "both") -> Series:
    return _run("KW", lambda n: _cutjoin(NamedOp("WKW"), n), _kw_closed, order, method)
