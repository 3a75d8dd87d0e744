import pytest

from potts.errors import ClosureCapExceeded, DegeneratePoints, NotAGroup, TooFewPoints
from potts.field_tower import make_field
from potts.pgl2 import (
    INF,
    ProjMap,
    all_elements,
    classify_subgroup,
    compose,
    element_order,
    four_point_determinant,
    four_point_involution,
    inverse,
    is_subgroup,
    order_by_criterion,
    order_by_powering,
    projective_line,
    stabilizer_of_set,
    standard_order_n,
    subgroup_closure,
    survey_order_p,
)


def test_normalization_and_identity():
    F = make_field(7)
    A = ProjMap(3, 0, 0, 3, F)
    assert A.is_identity()
    assert ProjMap(2, 4, 6, 1, F).a == 1
    with pytest.raises(ValueError):
        ProjMap(1, 2, 2, 4, F)


def test_diagonal_orders():
    assert element_order(ProjMap(3, 0, 0, 1, make_field(7))) == 6
    assert element_order(ProjMap(5, 0, 0, 1, make_field(13))) == 4
    assert element_order(ProjMap.identity(make_field(5))) == 1


def test_standard_order_n():
    F = make_field(11)
    M = standard_order_n(F, 5)
    assert M.key == (1, 7, 8, 5)
    assert order_by_powering(M) == 5
    assert order_by_powering(standard_order_n(F, 11)) == 11
    assert order_by_powering(standard_order_n(F, 2)) == 2
    assert standard_order_n(F, 1).is_identity()


def test_four_point_involution():
    F = make_field(7)
    tau = four_point_involution(F(0), INF, F(1), F(-1))
    assert tau.key == (0, 1, 6, 0)
    assert compose(tau, tau).is_identity()
    assert tau(F(0)) is INF and tau(F(1)) == F(-1)
    assert four_point_determinant(F(0), INF, F(1), F(-1), F) != 0
    with pytest.raises(DegeneratePoints):
        four_point_involution(F(1), F(1), F(2), F(3))


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_criterion_matches_powering(q):
    F = make_field(3, 2) if q == 9 else make_field(q)
    for A in all_elements(F):
        if A.is_identity():
            continue
        assert order_by_criterion(A) == order_by_powering(A)


@pytest.mark.parametrize("p,s,count,fixed", [(3, 1, 8, 4), (5, 1, 24, 6), (3, 2, 80, 10)])
def test_survey(p, s, count, fixed):
    S = survey_order_p(make_field(p, s))
    assert S.count == count
    assert S.all_in_psl2
    assert len(S.fixed_points) == fixed


def test_pgl2_sizes():
    for F in (make_field(3), make_field(5)):
        q = F.q
        assert len(all_elements(F)) == q**3 - q


def test_closure_and_classification():
    F = make_field(11)
    G = subgroup_closure([ProjMap(4, 0, 0, 1, F), ProjMap(0, 1, 1, 0, F)])
    assert len(G) == 10
    assert classify_subgroup(G).name == "Dihedral(5)"
    F13 = make_field(13)
    i = F13(5)
    G = subgroup_closure([ProjMap(i, 0, 0, 1, F13), ProjMap(1, 1, -1, 1, F13)])
    cls = classify_subgroup(G)
    assert (cls.name, cls.order) == ("Sym4", 24)


def test_pgl2_f3_is_sym4():
    G = all_elements(make_field(3))
    cls = classify_subgroup(G)
    assert cls.name == "PGL2(3)"
    assert cls.aliases == ("Sym4",)


def test_not_a_group():
    F = make_field(7)
    with pytest.raises(NotAGroup):
        classify_subgroup([ProjMap.identity(F), ProjMap(2, 0, 0, 1, F)])
    assert is_subgroup(subgroup_closure([ProjMap(2, 0, 0, 1, F)]))


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        subgroup_closure([ProjMap(1, 1, 0, 1, make_field(7)), ProjMap(0, 1, 1, 0, make_field(7))], cap=10)


def test_stabilizers():
    F25 = make_field(5, 2)
    line5 = projective_line(make_field(5))
    G = stabilizer_of_set(line5, F25)
    assert len(G) == 120
    assert classify_subgroup(G).aliases == ("Sym5",)
    F7 = make_field(7)
    assert len(stabilizer_of_set([F7(0), F7(1), INF], F7)) == 6
    with pytest.raises(TooFewPoints):
        stabilizer_of_set([F7(0), F7(1)], F7)


def test_inverse():
    F = make_field(3)
    for A in all_elements(F):
        assert compose(A, inverse(A)).is_identity()
