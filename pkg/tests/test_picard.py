import random

import pytest

from potts.errors import NoSuchRoot, NotAUnit, WindowOverflow, WrongCharacteristic
from potts.field_tower import make_field
from potts.picard import (
    CharacterPair,
    TruncLaurentUnit,
    hodge_characters,
    mu_n_structure,
    picard_descriptor,
    random_principal_unit,
    random_unit,
    subgroup_generated,
)

F5 = make_field(5)
W = (-4, 4)


def test_hodge_n3():
    rep = hodge_characters(3)
    assert [c.to_json() for c in rep.characters] == [[1, 1], [1, 2]]
    assert rep.top_wedge == -1
    assert all(t == -rep.field.one for t in rep.tau_diagonal)


@pytest.mark.parametrize("N", [3, 5, 7, 9])
def test_top_wedge_sign(N):
    assert hodge_characters(N).top_wedge == (-1) ** ((N - 1) // 2)


def test_hodge_needs_root():
    with pytest.raises(NoSuchRoot):
        hodge_characters(5, make_field(7))
    with pytest.raises(WrongCharacteristic):
        hodge_characters(5, make_field(5))


def test_subgroup_generated():
    assert subgroup_generated([(1, 1), (1, 2)], 3).order == 12
    assert subgroup_generated([], 3).order == 1
    sub = subgroup_generated([(0, 2)], 3)
    assert sub.order == 3
    assert (0, 4) in sub and (1, 0) not in sub
    for N in (5, 7):
        assert subgroup_generated([(1, 1), (1, 2)], N).is_full
    assert CharacterPair(3, 7, 3) == CharacterPair(1, 1, 3)


def test_unit_examples():
    u = TruncLaurentUnit.principal(F5, 2, W, {1: 1})
    inv = u.inverse()
    assert inv == TruncLaurentUnit.principal(F5, 2, W, {1: -1})
    assert (u * inv).is_one()
    assert (u**5).is_one()
    x = TruncLaurentUnit.monomial(F5, 2, W, 1, 1)
    assert x.inverse() == TruncLaurentUnit.monomial(F5, 2, W, 1, -1)
    assert not x.in_principal_part()


def test_unit_errors():
    with pytest.raises(NotAUnit):
        TruncLaurentUnit(F5, 2, W, [{0: 1, 1: 1}])
    with pytest.raises(NotAUnit):
        TruncLaurentUnit(F5, 2, W, [{}])
    big = TruncLaurentUnit.monomial(F5, 2, W, 1, 3)
    with pytest.raises(WindowOverflow):
        big * big


@pytest.mark.parametrize("p", [5, 7])
def test_group_laws(p):
    F = make_field(p)
    m = (p - 1) // 2
    rng = random.Random(p)
    window = (-12, 12)
    for _ in range(100):
        a, b, c = (random_unit(F, m, window, (-1, 1), rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a * a.inverse()).is_one()
        c0, e, w = a.decompose()
        assert TruncLaurentUnit.monomial(F, m, window, c0, e) * w == a
        assert (random_principal_unit(F, m, window, (-1, 1), rng) ** p).is_one()


def test_mu_structure():
    r2 = mu_n_structure(5, n=2, window=(-2, 2), samples=100)
    assert r2.verified and r2.elements == (-1, 1)
    rp = mu_n_structure(7, n=7, samples=100)
    assert rp.verified and rp.description == "1 + zA"


def test_descriptors():
    d = picard_descriptor("tame", 5)
    assert (d.order, d.finite_part) == (20, (2, 10))
    assert picard_descriptor("tame", 3).order == 12
    w = picard_descriptor("wild", 5)
    assert (w.finite_part, w.infinite_part, w.nilpotency, w.exponent) == ((2,), "1 + zA", 2, 5)
    with pytest.raises(WrongCharacteristic):
        picard_descriptor("tame", 5, 5)
    with pytest.raises(WrongCharacteristic):
        picard_descriptor("wild", 9)
