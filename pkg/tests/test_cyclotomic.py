import pytest

from potts.cyclotomic import (
    HalfTraceElem,
    embed_half_trace,
    fibre_mod_p,
    half_traces_by_enumeration,
)
from potts.errors import EvenPrime, MixedModulus, NoSuchRoot
from potts.field_tower import make_field
from potts.poly_ring import Dyadic


def test_ring_arithmetic():
    v = HalfTraceElem.v(5)
    assert v * v == HalfTraceElem(5, [Dyadic(1, 2), Dyadic(-1, 1)])
    assert v - v == 0
    with pytest.raises(MixedModulus):
        v + HalfTraceElem.v(7)


def test_fibres():
    f = fibre_mod_p(5, 5)
    assert (f.multiplicity, f.reduced, f.components) == (2, False, 1)
    assert fibre_mod_p(15, 3).empty
    assert fibre_mod_p(5, 7).components == 2
    with pytest.raises(EvenPrime):
        fibre_mod_p(5, 2)


@pytest.mark.parametrize("N,q", [(5, 11), (3, 7), (7, 29), (9, 19)])
def test_embedding_matches_enumeration(N, q):
    F = make_field(q)
    assert embed_half_trace(N, F) == half_traces_by_enumeration(N, F)


def test_embedding_values():
    assert [x.v for x in embed_half_trace(5, make_field(11))] == [7, 9]
    assert [x.v for x in embed_half_trace(3, make_field(7))] == [3]
    with pytest.raises(NoSuchRoot):
        embed_half_trace(5, make_field(7))


def test_evaluate_is_a_ring_map():
    F = make_field(11)
    root = embed_half_trace(5, F)[0]
    a = HalfTraceElem(5, [1, 2])
    b = HalfTraceElem(5, [Dyadic(3, 1), -1])
    assert (a * b).evaluate(root) == a.evaluate(root) * b.evaluate(root)
    assert (a + b).evaluate(root) == a.evaluate(root) + b.evaluate(root)
