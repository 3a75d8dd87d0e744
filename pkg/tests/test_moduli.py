import pytest

from potts.field_tower import make_field
from potts.moduli import census_tame, census_wild, cusp_combinatorics, degeneration_check


@pytest.mark.parametrize("N,q", [(3, 7), (3, 13), (5, 11)])
def test_tame_census(N, q):
    r = census_tame(N, make_field(q))
    assert r.classes == r.distinct_j == q - 1
    assert r.match
    assert r.max_witness_degree <= 6


@pytest.mark.parametrize("p,s,classes", [(3, 1, 2), (3, 2, 8), (5, 1, 4)])
def test_wild_census(p, s, classes):
    r = census_wild(make_field(p, s))
    assert r.classes == classes
    assert r.match


def test_census_csv_rows():
    r = census_wild(make_field(3))
    lines = r.to_csv().splitlines()
    assert lines[0] == "A,B,j,class"
    assert len(lines) == 1 + r.models == 7


def test_cusps():
    inf, zero = cusp_combinatorics(3)
    assert (inf.genera, inf.nodes, inf.j_limit) == ((0, 0), 3, "infinity")
    assert (zero.genera, zero.nodes, zero.j_limit) == ((1, 1), 1, "0")
    inf, zero = cusp_combinatorics(5)
    assert (inf.nodes, zero.genera) == (5, (2, 2))
    for N in range(3, 22, 2):
        assert all(d.genus == N - 1 for d in cusp_combinatorics(N))


@pytest.mark.parametrize("N,q,points", [(3, 7, [3, 5, 6]), (5, 11, [2, 6, 7, 8, 10])])
def test_degeneration(N, q, points):
    d = degeneration_check(N, make_field(q))
    assert d.certified
    assert [x.v for x in d.intersection] == points


def test_degeneration_over_extension():
    d = degeneration_check(3, make_field(5))
    assert d.certified
    assert d.splitting_field is make_field(5, 2)
