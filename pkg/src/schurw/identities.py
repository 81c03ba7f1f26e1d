"""Finite-instance checkers for the combinatorial identities behind the tau-function expansions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from gmpy2 import mpq

from .combinat import delete
from .exactpoly import ZERO, Poly
from .tau import A_coeff
from .vertex import SCHUR, LinComb, apply_Bstar, q_inner, qfun, schur, straighten_schur
from .wops import NamedOp, apply_named


@dataclass
class Verdict:
    ok: bool
    lhs: Any
    rhs: Any
    case: Any = None

    def __bool__(self) -> bool:
        return self.ok


# -- D operators -------------------------------------------------------------


def _word(word) -> Counter:
    if isinstance(word, Mapping):
        return Counter({int(i): int(c) for i, c in word.items()})
    return Counter(int(i) for i in word)


def apply_D(word, mu: Sequence[int]) -> "mpq":
    """Apply D_i A_mu = A_{mu - 2e_i} / (mu_i - 1) for every letter of the word.

    The word is a sequence of 1-based component indices (``(1, 1, 3)`` is D_1^2 D_3)
    or a mapping index -> count.  Letters are applied right to left.
    """
    lam = list(mu)
    denom = mpq(1)
    letters = _word(word)
    for i in sorted(letters, reverse=True):
        if not 1 <= i <= len(lam):
            raise ValueError(f"D_{i} out of range for a label of length {len(lam)}")
        for _ in range(letters[i]):
            d = lam[i - 1] - 1
            if d == 0:
                raise ValueError(f"D_{i} divides by zero on {tuple(lam)}")
            denom *= d
            lam[i - 1] -= 2
    return A_coeff(tuple(lam)) / denom


def DA(lam: Sequence[int]) -> "mpq":
    """D A_lambda = sum_i D_i A_lambda."""
    return sum((apply_D((i,), lam) for i in range(1, len(lam) + 1)), ZERO)


def D2A(lam: Sequence[int]) -> "mpq":
    """D^2 A_lambda = sum_{a,b} D_a D_b A_lambda."""
    l = len(lam)
    return sum((apply_D((a, b), lam) for a in range(1, l + 1) for b in range(1, l + 1)), ZERO)


def _double(v: Sequence[int]) -> tuple:
    return tuple(2 * x for x in v)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# -- Phi, Gamma, Psi ---------------------------------------------------------


def phi(mu: Sequence[int]) -> "mpq":
    mu = tuple(mu)
    l = len(mu)
    lam = _double(mu)
    rng = range(1, l + 1)
    out = 3 * sum(mu) * A_coeff(lam)
    for i in rng:
        out -= 6 * (2 * mu[i - 1] - 1) * (2 * mu[i - 1] - 5) * apply_D((i, i, i), lam)
    for i in rng:
        for j in rng:
            if i != j:
                out += 24 * apply_D((i, i, j), lam)
    for i in rng:
        for j in rng:
            for k in rng:
                if len({i, j, k}) == 3:
                    out += 8 * apply_D((i, j, k), lam)
    return out


def _even_length(nu: Sequence[int]) -> tuple:
    nu = tuple(nu)
    if len(nu) % 2 or len(nu) < 4:
        raise ValueError("needs an even-length label of length >= 4")
    return nu


def gamma(nu: Sequence[int]) -> "mpq":
    nu = _even_length(nu)
    l = len(nu)
    out = ZERO
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i == j:
                continue
            s = _sign(i + j + (j > i))
            pair = (2 * nu[i - 1], 2 * nu[j - 1])
            out += s * DA(pair) * DA(_double(delete(nu, i - 1, j - 1)))
    return out


def psi(nu: Sequence[int]) -> "mpq":
    nu = _even_length(nu)
    l = len(nu)
    out = ZERO
    for i in range(1, l):
        pair = (2 * nu[i - 1], 2 * nu[-1])
        rest = _double(delete(nu, i - 1, l - 1))
        out += _sign(i + 1) * (DA(pair) * D2A(rest) + D2A(pair) * DA(rest))
    return out


# -- expansions of D A along the last component -------------------------------


def _pairs_last(nu: tuple):
    l = len(nu)
    for j in range(1, l):
        yield _sign(j + 1), (2 * nu[j - 1], 2 * nu[-1]), _double(delete(nu, j - 1, l - 1))


def _pairs_all(nu: tuple):
    l = len(nu)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i != j:
                yield _sign(i + j + (i < j)), (2 * nu[i - 1], 2 * nu[j - 1]), _double(delete(nu, i - 1, j - 1))


def dexp_checks(nu: Sequence[int]) -> dict:
    """Both sides of the four expansions of D A_{2 nu} and D^2 A_{2 nu}.

    The last-component forms apply to every label; the symmetric halves need
    nu_l >= 1 and nu_l >= 2 respectively and are skipped otherwise.
    """
    nu = tuple(nu)
    lam = _double(nu)
    out = {}
    rhs = sum((s * (A_coeff(p) * DA(r) + DA(p) * A_coeff(r)) for s, p, r in _pairs_last(nu)), ZERO)
    out["D_last"] = Verdict(DA(lam) == rhs, DA(lam), rhs, nu)
    rhs = sum(
        (s * (D2A(p) * A_coeff(r) + 2 * DA(p) * DA(r) + A_coeff(p) * D2A(r)) for s, p, r in _pairs_last(nu)),
        ZERO,
    )
    out["D2_last"] = Verdict(D2A(lam) == rhs, D2A(lam), rhs, nu)
    if nu[-1] >= 1:
        rhs = sum((s * DA(p) * A_coeff(r) for s, p, r in _pairs_all(nu)), ZERO) / 2
        out["D_sym"] = Verdict(DA(lam) == rhs, DA(lam), rhs, nu)
    if nu[-1] >= 2:
        rhs = sum((s * (D2A(p) * A_coeff(r) + DA(p) * DA(r)) for s, p, r in _pairs_all(nu)), ZERO) / 2
        out["D2_sym"] = Verdict(D2A(lam) == rhs, D2A(lam), rhs, nu)
    return out


# -- Schur-side lemmas -------------------------------------------------------


def check_hook_lemma(lam: Sequence[int], n: int, m: int) -> Verdict:
    """S_(lambda, n, 1^m) = delta_{m,-n} (-1)^m S_lambda for n <= 0 <= m."""
    if n > 0 or m < 0:
        raise ValueError("needs n <= 0 and m >= 0")
    lam = tuple(lam)
    label = lam + (n,) + (1,) * m
    lhs = schur(label)
    rhs = schur(lam).scale((-1) ** m) if m == -n else Poly()
    same_labels = straighten_schur(label) == (straighten_schur(lam).scale((-1) ** m) if m == -n else LinComb(SCHUR))
    return Verdict(lhs == rhs and same_labels, lhs, rhs, (lam, n, m))


def bstar_on_schur_closed(n: int, lam: Sequence[int]) -> LinComb:
    """B*_n S_lambda assembled from deletions of a part and one column of removed boxes."""
    lam = tuple(lam)
    l = len(lam)
    terms = []
    if n <= -l:
        terms.append((tuple(x + 1 for x in lam) + (1,) * (-n - l), (-1) ** (n % 2)))
    for i in range(1, l + 1):
        if lam[i - 1] == n + i - 1:
            rest = delete(lam, i - 1)
            label = tuple(x + 1 if j < i - 1 else x for j, x in enumerate(rest))
            terms.append((label, _sign(i - 1)))
    return LinComb.from_labels(SCHUR, terms)


def check_bstar(n: int, lam: Sequence[int]) -> Verdict:
    lhs = bstar_on_schur_closed(n, lam)
    rhs = apply_Bstar(n, schur(lam), 0)
    return Verdict(lhs.to_poly() == rhs, lhs, rhs, (n, tuple(lam)))


def check_adjoint(mu: Sequence[int], f: Poly) -> Verdict:
    """<(W_KW)^perp Q_mu, f> = <Q_mu, W_KW f>."""
    q = qfun(mu)
    lhs = q_inner(apply_named(NamedOp("WKWperp"), q), f)
    rhs = q_inner(q, apply_named(NamedOp("WKW"), f))
    return Verdict(lhs == rhs, lhs, rhs, tuple(mu))
