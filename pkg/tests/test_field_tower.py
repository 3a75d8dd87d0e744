import random

import pytest
from hypothesis import given, settings, strategies as st

from potts.errors import EvenCharacteristic, NotPrime, SizeCapExceeded, ZeroElement
from potts.field_tower import (
    common_field,
    divisors,
    element_order,
    embed,
    factorize,
    is_prime,
    make_field,
    parse_field_spec,
    primitive_root_of_unity,
    square_root,
)


def test_primes_and_factorization():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_field_cache_is_identity():
    assert make_field(3, 2) is make_field(3, 2)
    assert parse_field_spec("3^2") is make_field(3, 2)
    assert parse_field_spec("9") is make_field(3, 2)
    assert parse_field_spec(7) is make_field(7)


def test_field_errors():
    with pytest.raises(NotPrime):
        make_field(9)
    with pytest.raises(EvenCharacteristic):
        make_field(2)
    with pytest.raises(SizeCapExceeded):
        make_field(3, 20)
    with pytest.raises(NotPrime):
        parse_field_spec("12")


def test_f9_modulus_and_generator():
    F = make_field(3, 2)
    assert F.modulus == (1, 0, 1)
    assert F.generator.coeffs() == [1, 1]
    assert element_order(F.generator) == 8


def test_element_orders():
    assert element_order(make_field(11)(3)) == 5
    assert element_order(make_field(7)(3)) == 6
    assert primitive_root_of_unity(make_field(11), 5) == 4


def test_zero_has_no_inverse():
    with pytest.raises(ZeroElement):
        make_field(5).zero.inverse()


@pytest.mark.parametrize("p,s", [(3, 1), (5, 1), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_field_is_cyclic_and_closed(p, s):
    F = make_field(p, s)
    elems = list(F.elements())
    assert len(elems) == F.q
    assert len({x.v for x in elems}) == F.q
    g = F.generator
    powers = {(g**k).v for k in range(F.q - 1)}
    assert len(powers) == F.q - 1


@pytest.mark.parametrize("p,s", [(7, 1), (3, 2), (5, 2), (11, 2)])
def test_square_roots(p, s):
    F = make_field(p, s)
    squares = 0
    for x in F.elements():
        r = square_root(x)
        if r is None:
            assert not x.is_square()
        else:
            squares += 1
            assert r * r == x
    assert squares == (F.q + 1) // 2


def test_embedding_is_a_homomorphism():
    src, dst = make_field(3, 2), make_field(3, 4)
    rng = random.Random(5)
    for _ in range(50):
        a, b = src.random_element(rng), src.random_element(rng)
        assert embed(a + b, dst) == embed(a, dst) + embed(b, dst)
        assert embed(a * b, dst) == embed(a, dst) * embed(b, dst)
    assert common_field(make_field(3, 2), make_field(3, 3)) is make_field(3, 6)


FIELDS = [make_field(7), make_field(3, 2), make_field(5, 3)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_field_axioms(F, i, j, k):
    a, b, c = F.from_index(i % F.q), F.from_index(j % F.q), F.from_index(k % F.q)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if b:
        assert (a / b) * b == a
    assert a**F.q == a
