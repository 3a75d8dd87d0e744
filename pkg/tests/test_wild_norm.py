import random

import pytest

from potts.errors import (
    DegenerateChange,
    IndexOutOfRange,
    InvalidContext,
    SingularConfiguration,
    TEqualsOne,
)
from potts.field_tower import make_field
from potts.poly_ring import Poly
from potts.potts_curve import PottsModel, j_invariant
from potts.wild_norm import (
    Affine,
    DeltaSwap,
    NormContext,
    build_H_delta,
    change_coordinates,
    delta,
    invariant_subspace,
    norm_poly,
    omega_and_p_identity,
    partial_sum,
    random_context,
    resultant_sides,
    tautological_j,
    wild_j,
)

F7 = make_field(7)
HAND = NormContext(3, F7, 2, 1, 1, 1, 3)


def test_hand_instance():
    assert partial_sum(HAND, 2) == 3
    x = Poly.x(F7)
    assert norm_poly(HAND) == x**3 + 3 * x * x + 3 * x
    assert omega_and_p_identity(HAND) == 3
    assert build_H_delta(HAND).delta == 3
    sides = resultant_sides(HAND)
    assert sides.lhs == sides.rhs == 2
    assert wild_j(HAND) == 1


def test_context_validation():
    with pytest.raises(InvalidContext):
        NormContext(3, F7, 3, 1, 1, 1, 3)
    with pytest.raises(InvalidContext):
        NormContext(3, make_field(3), 1, 0, 1, 1, 3)
    with pytest.raises(InvalidContext):
        NormContext(3, F7, 2, 1, 0, 1, 3)
    with pytest.raises(IndexOutOfRange):
        partial_sum(HAND, 4)
    with pytest.raises(TEqualsOne):
        resultant_sides(NormContext(3, make_field(3), 1, 1, 1, 0, 2))
    with pytest.raises(InvalidContext):
        random_context(F7, 5, random.Random(0))


def test_singular_configuration():
    ctx = NormContext(3, F7, 2, 1, 1, 2, 1)
    with pytest.raises(SingularConfiguration):
        wild_j(ctx)


@pytest.mark.parametrize("p,ell", [(3, 7), (3, 31), (5, 11), (7, 29)])
def test_resultant_identity_random(p, ell):
    F = make_field(ell)
    rng = random.Random(ell)
    for _ in range(25):
        assert resultant_sides(random_context(F, p, rng)).holds


@pytest.mark.parametrize("p,ell", [(3, 7), (5, 11), (7, 29)])
def test_coordinate_changes(p, ell):
    F = make_field(ell)
    rng = random.Random(p * ell)
    done = 0
    while done < 15:
        ctx = random_context(F, p, rng)
        try:
            wild_j(ctx)
        except SingularConfiguration:
            continue
        done += 1
        rep = change_coordinates(ctx, Affine(F.random_nonzero(rng), F.random_element(rng)))
        assert rep.invariant
        rep = change_coordinates(ctx, DeltaSwap())
        assert rep.invariant and rep.delta_product == 1
        if ctx.psi:
            t = ctx.t
            u = F.random_element(rng)
            v = (1 - u * (t - 1)) / ctx.psi
            assert change_coordinates(ctx, DeltaSwap(u, v)).invariant


def test_bad_changes():
    with pytest.raises(DegenerateChange):
        change_coordinates(HAND, Affine(0, 1))
    with pytest.raises(DegenerateChange):
        change_coordinates(HAND, DeltaSwap(F7(1), F7(1)))


def test_invariant_subspace_example():
    rep = invariant_subspace(HAND)
    assert rep.dimension == 2 and rep.matches_norm
    x = Poly.x(F7)
    assert rep.basis[0] == Poly([1], F7)
    assert rep.basis[1] == x**3 + 3 * x * x + 3 * x


def test_specialization_matches_model_j():
    for p in (3, 5):
        F = make_field(p)
        for A in F.elements():
            for B in F.elements():
                if A * A == 4 * B:
                    continue
                ctx = NormContext(p, F, 1, 1, 1, A, B)
                assert wild_j(ctx) == j_invariant(PottsModel.wild(F, A, B))


def test_tautological_closed_form():
    F = make_field(11)
    t = F(3)  # order 5
    for lam in F.elements():
        ctx = NormContext(5, F, t, 1, 1, lam, 1)
        try:
            j = tautological_j(t, lam, 5)
        except SingularConfiguration:
            with pytest.raises(SingularConfiguration):
                wild_j(ctx)
            continue
        assert j == wild_j(ctx)
        assert delta(ctx) * (lam * lam - 4).inverse() == j
