"""Hypothesis strategies shared by the test modules."""

from gmpy2 import mpq
from hypothesis import strategies as st

from schurw.exactpoly import Poly

rationals = st.builds(mpq, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polys(draw, max_var: int = 5, max_terms: int = 4, max_exp: int = 3, odd: bool = False):
    idx = [n for n in range(1, max_var + 1) if not odd or n % 2]
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {n: draw(st.integers(0, max_exp)) for n in draw(st.lists(st.sampled_from(idx), max_size=3, unique=True))}
        exps = {n: e for n, e in exps.items() if e}
        terms[tuple(sorted(exps.items()))] = draw(rationals)
    out = Poly()
    for exps, c in terms.items():
        out = out + Poly.monomial(dict(exps), c)
    return out


int_vectors = st.lists(st.integers(-3, 6), max_size=4).map(tuple)
