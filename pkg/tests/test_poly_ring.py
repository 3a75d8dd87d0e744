import random

import pytest
from hypothesis import given, settings, strategies as st

from potts.field_tower import embed, make_field
from potts.poly_ring import (
    DD,
    ZZ,
    Dyadic,
    Poly,
    cyclotomic_phi,
    half_trace_chi,
    half_trace_psi,
    is_squarefree,
    poly_gcd,
    reduce_mod_p,
    resultant,
    roots_over_splitting_field,
    splitting_degree,
    sylvester_resultant,
)


def test_dyadic_canonical():
    assert Dyadic(4, 2) == Dyadic(1, 0)
    assert Dyadic(1, 1) * 2 == 1
    assert Dyadic(-4, 0).inverse() == Dyadic(-1, 2)
    with pytest.raises(ZeroDivisionError):
        Dyadic(3).inverse()


def test_cyclotomic_values():
    assert cyclotomic_phi(15)(1) == 1
    assert list(cyclotomic_phi(15).coeffs) == [1, -1, 0, 1, -1, 1, 0, -1, 1]


def test_half_trace_polys():
    u = Poly.x(ZZ)
    assert half_trace_psi(3) == u + 1
    assert half_trace_psi(5) == u * u + u - 1
    assert half_trace_psi(7) == u**3 + u * u - 2 * u - 1
    chi5 = half_trace_chi(5)
    assert list(chi5.coeffs) == [Dyadic(-1, 2), Dyadic(1, 1), Dyadic(1)]


def test_reduction_mod_p():
    assert [c.v for c in reduce_mod_p(half_trace_chi(5), 5).coeffs] == [1, 3, 1]
    assert [c.v for c in reduce_mod_p(half_trace_chi(3), 3).coeffs] == [2, 1]


def test_resultant_examples():
    F = make_field(7)
    x = Poly.x(F)
    assert resultant(x * x - 1, x * x + 1) == 4
    a, b = F(2), F(5)
    assert resultant(x - a, x - b) == a - b


def test_splitting():
    F = make_field(3)
    x = Poly.x(F)
    assert splitting_degree(x * x + 1) == 2
    E, roots = roots_over_splitting_field(x * x + 1)
    assert E is make_field(3, 2)
    assert len(roots) == 2
    assert all(r * r + 1 == E.zero for r in roots)


def test_gcd_and_squarefree():
    F = make_field(5)
    x = Poly.x(F)
    f = (x - 1) * (x - 2)
    g = (x - 1) * (x - 3)
    assert poly_gcd(f, g) == x - 1
    assert is_squarefree(f)
    assert not is_squarefree(f * (x - 1))


def _poly(F, coeffs):
    return Poly([F(c) for c in coeffs], F)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([7, 11, 13]),
       st.lists(st.integers(0, 100), min_size=1, max_size=6),
       st.lists(st.integers(0, 100), min_size=2, max_size=6))
def test_divmod_and_resultant_oracle(p, fa, ga):
    F = make_field(p)
    f, g = _poly(F, fa), _poly(F, ga)
    if g.degree < 1 or f.degree < 1:
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
    assert resultant(f, g) == sylvester_resultant(f, g)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=5))
def test_roots_are_roots(coeffs):
    F = make_field(7)
    f = _poly(F, coeffs + [1])
    if not is_squarefree(f):
        return
    E, roots = roots_over_splitting_field(f)
    assert len(roots) == f.degree
    fE = f.map_coeffs(lambda c: embed(c, E), E)
    for r in roots:
        assert not fE(r)
