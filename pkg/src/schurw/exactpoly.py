"""Sparse polynomials over Q in the graded variables t_1, t_2, ... (deg t_n = n).

A monomial is stored as a dense exponent tuple ``(e_1, e_2, ..., e_N)`` with the
trailing zeros trimmed, so ``()`` is the constant monomial and ``(0, 0, 1)`` is
``t_3``.  That form is canonical, hashable and cheap to add.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from gmpy2 import mpq

Rational = type(mpq())
Monomial = tuple

ZERO = mpq(0)
ONE = mpq(1)


def rat(x) -> "mpq":
    """Coerce ints, Fractions, mpq values and "p/q" strings to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, int):
        return mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def mono_degree(mono: Monomial) -> int:
    return sum(i * e for i, e in enumerate(mono, 1))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def _trim(exps: list) -> Monomial:
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def mono_from_map(exps: Mapping[int, int]) -> Monomial:
    if not exps:
        return ()
    out = [0] * max(exps)
    for n, e in exps.items():
        if n < 1 or e < 0:
            raise ValueError(f"bad exponent entry t_{n}^{e}")
        out[n - 1] = e
    return _trim(out)


def mono_to_map(mono: Monomial) -> dict:
    return {i: e for i, e in enumerate(mono, 1) if e}


def _term_key(mono: Monomial):
    # ascending graded degree, then larger exponents of low-index variables first
    return (mono_degree(mono), tuple(-e for e in mono) + (1,))


class Poly:
    """Immutable polynomial: a map from monomials to nonzero rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = rat(c)
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # caller guarantees canonical monomials and nonzero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "Poly":
        c = rat(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, n: int) -> "Poly":
        if n < 1:
            raise ValueError("variable index must be >= 1")
        return cls._raw({(0,) * (n - 1) + (1,): ONE})

    @classmethod
    def monomial(cls, exps: Mapping[int, int], coeff=1) -> "Poly":
        return cls({mono_from_map(exps): coeff})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exps: Mapping[int, int] | Monomial):
        mono = mono_from_map(exps) if isinstance(exps, Mapping) else tuple(exps)
        return self._terms.get(mono, ZERO)

    def degree(self) -> int:
        """Largest graded degree of a term; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self._terms}) <= 1

    def variables(self) -> set:
        return {i for m in self._terms for i, e in enumerate(m, 1) if e}

    def is_odd_supported(self) -> bool:
        return all(i % 2 for i in self.variables())

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _term_key(kv[0]))

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, Rational)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def scale(self, c) -> "Poly":
        c = rat(c)
        if not c:
            return Poly()
        return Poly._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self._terms or not other._terms:
            return Poly()
        out: dict = {}
        get = out.get
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, ZERO) + ca * cb
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Poly":
        return self.scale(ONE / rat(c))

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"t{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono, 1) if e]
            if not factors:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(rat_str(c) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": rat_str(c),
                    "monomial": {str(i): str(e) for i, e in mono_to_map(m).items()},
                }
                for m, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, doc) -> "Poly":
        rows = doc["terms"] if isinstance(doc, Mapping) else doc
        out: dict = {}
        for row in rows:
            mono = mono_from_map({int(k): int(v) for k, v in row["monomial"].items()})
            out[mono] = out.get(mono, ZERO) + rat(row["coeff"])
        return cls(out)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    out: dict = {}
    get = out.get
    for p in polys:
        for m, c in p._terms.items():
            out[m] = get(m, ZERO) + c
    return Poly._raw({m: c for m, c in out.items() if c})


def poly_arith(kind: str, p: Poly, q) -> Poly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    if kind == "scale":
        if isinstance(q, Poly):
            raise TypeError("scale expects a rational, not a polynomial")
        return p.scale(q)
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def partial(p: Poly, n: int) -> Poly:
    """d/dt_n."""
    if n < 1:
        raise ValueError("variable index must be >= 1")
    k = n - 1
    out = {}
    for mono, c in p._terms.items():
        if len(mono) > k and mono[k]:
            e = mono[k]
            exps = list(mono)
            exps[k] = e - 1
            out[_trim(exps)] = c * e
    return Poly._raw(out)


def mul_var(p: Poly, n: int) -> Poly:
    """p * t_n."""
    if n < 1:
        raise ValueError("variable index must be >= 1")
    k = n - 1
    out = {}
    for mono, c in p._terms.items():
        exps = list(mono) + [0] * (n - len(mono))
        exps[k] += 1
        out[tuple(exps)] = c
    return Poly._raw(out)


def evaluate(p: Poly, values: Mapping[int, object]):
    """Substitute t_n -> values[n] (unlisted variables are 0)."""
    vals = {n: rat(v) for n, v in values.items()}
    total = ZERO
    for mono, c in p._terms.items():
        term = c
        for i, e in enumerate(mono, 1):
            if e:
                v = vals.get(i, ZERO)
                if not v:
                    term = ZERO
                    break
                term *= v ** e
        total += term
    return total


def homogeneous_component(p: Poly, d: int) -> Poly:
    if d < 0:
        raise ValueError("degree must be non-negative")
    return Poly._raw({m: c for m, c in p._terms.items() if mono_degree(m) == d})


def homogeneous_parts(p: Poly) -> dict:
    parts: dict = {}
    for m, c in p._terms.items():
        parts.setdefault(mono_degree(m), {})[m] = c
    return {d: Poly._raw(t) for d, t in sorted(parts.items())}


t = Poly.var
