import pytest

from potts.errors import EvenN, SingularModel, VariantMismatch, WrongCharacteristic
from potts.field_tower import make_field
from potts.potts_curve import (
    PottsModel,
    aut_order_oracle,
    automorphisms,
    canonical_model_from_j,
    check_witness,
    classify_aut,
    gl2_order_multiset,
    is_isomorphic,
    j_invariant,
    lift_to_curve,
    order_multiset,
    quarter_j_square_root_check,
    validate,
)

F7 = make_field(7)


def test_model_validation():
    with pytest.raises(EvenN):
        PottsModel.tame(F7, 4, 1, 1)
    with pytest.raises(WrongCharacteristic):
        PottsModel.tame(make_field(3), 3, 1, 1)
    with pytest.raises(SingularModel):
        PottsModel.tame(F7, 3, 1, 0)
    with pytest.raises(SingularModel):
        PottsModel.tame(F7, 3, 2, 1)
    with pytest.raises(WrongCharacteristic):
        PottsModel(variant="wild", N=5, field=make_field(3), A=0, B=1)


def test_tame_example():
    m = PottsModel.tame(F7, 3, 0, -1)
    bd = validate(m)
    assert len(bd.points) == 6
    assert bd.genus == 2
    assert j_invariant(m) == 5
    cls = classify_aut(m)
    assert (cls.tag, cls.order, cls.equivariant_order) == ("TwoTimesDihedral2N", 24, 12)
    orc = aut_order_oracle(m)
    assert (orc.aut_order, orc.G_class.name) == (24, "Dihedral(6)")


def test_automorphism_relations():
    rep = automorphisms(PottsModel.tame(F7, 3, 0, -1))
    assert rep.ok
    assert rep.sampled_points >= 20
    rep = automorphisms(PottsModel.wild(make_field(3), 0, 2))
    assert rep.ok


def test_canonical_models_hit_j():
    for j in range(1, 7):
        assert j_invariant(canonical_model_from_j(3, F7, j)) == j
    F3 = make_field(3)
    for j in (1, 2):
        assert j_invariant(canonical_model_from_j(3, F3, j, "wild")) == j


def test_isomorphism_tame():
    m1 = PottsModel.tame(F7, 3, 1, 3)
    lam = F7(2)
    m2 = PottsModel.tame(F7, 3, m1.A * lam**3, m1.B * lam**6)
    res = is_isomorphic(m1, m2)
    assert res.geometric and res.witness is not None
    assert check_witness(m1, m2, res)
    other = next(PottsModel.tame(F7, 3, a, 1) for a in range(7)
                 if a * a != 4 and j_invariant(PottsModel.tame(F7, 3, a, 1)) != j_invariant(m1))
    assert not is_isomorphic(m1, other).geometric


def test_isomorphism_wild_witness():
    F3 = make_field(3)
    res = is_isomorphic(PottsModel.wild(F3, 0, 2), PottsModel.wild(F3, 2, 0))
    assert res.geometric and res.witness_degree == 3
    assert check_witness(PottsModel.wild(F3, 0, 2), PottsModel.wild(F3, 2, 0), res)
    with pytest.raises(VariantMismatch):
        is_isomorphic(PottsModel.wild(F3, 0, 2), PottsModel.tame(make_field(7), 3, 0, 1))


@pytest.mark.parametrize("A,B,order", [(0, -1, 24), (1, 3, 12)])
def test_classification_vs_oracle_f7(A, B, order):
    m = PottsModel.tame(F7, 3, A, B)
    assert classify_aut(m).order == aut_order_oracle(m).aut_order == order


def test_special_j_lifts_to_gl2_f3():
    m = canonical_model_from_j(3, F7, 4)
    assert classify_aut(m).order == 48
    lifts = lift_to_curve(m)
    assert len(lifts) == 48
    assert order_multiset(lifts) == gl2_order_multiset(make_field(3))


def test_wild_p3_quarter_j_is_pgl2_f3():
    F3 = make_field(3)
    m = canonical_model_from_j(3, F3, 2, "wild")
    cls = classify_aut(m)
    orc = aut_order_oracle(m)
    assert (cls.order, orc.aut_order, orc.G_class.name) == (48, 48, "PGL2(3)")
    assert cls.equivariant_order == orc.equivariant_order == 6
    assert order_multiset(lift_to_curve(m)) == {1: 1, 2: 13, 3: 8, 4: 6, 6: 8, 8: 12}


def test_wild_generic_order_12():
    m = canonical_model_from_j(3, make_field(3), 1, "wild")
    assert classify_aut(m).order == aut_order_oracle(m).aut_order == 12


@pytest.mark.parametrize("N,q", [(3, 13), (5, 11)])
def test_quarter_j_square_root(N, q):
    assert quarter_j_square_root_check(N, make_field(q)).order == 2 * N
