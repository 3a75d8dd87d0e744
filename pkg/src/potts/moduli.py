"""Isomorphism-class census over small fields and the two cusp types."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularModel, SplittingCapExceeded, WrongCharacteristic
from .field_tower import Field, FieldElem
from .poly_ring import SPLITTING_CAP, Poly, roots_over_splitting_field
from .potts_curve import TAME, WILD, PottsModel, is_isomorphic, j_invariant

WITNESS_DEGREE_CAP = 6
# F_{13^6} holds the sixth roots needed at q = 13
CENSUS_FIELD_CAP = 10**7


@dataclass(frozen=True)
class CensusRow:
    A: FieldElem
    B: FieldElem
    j: FieldElem
    class_id: int


@dataclass(frozen=True)
class CensusReport:
    variant: str
    N: int
    q: int
    models: int
    distinct_j: int
    classes: int
    expected: int
    max_witness_degree: int
    rows: tuple[CensusRow, ...]

    @property
    def match(self) -> bool:
        return self.classes == self.distinct_j == self.expected

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "N": self.N,
            "q": self.q,
            "models": self.models,
            "distinct_j": self.distinct_j,
            "classes": self.classes,
            "expected": self.expected,
            "max_witness_degree": self.max_witness_degree,
            "match": self.match,
        }

    def to_csv(self) -> str:
        lines = ["A,B,j,class"]
        for r in self.rows:
            lines.append(f"{r.A.index},{r.B.index},{r.j.index},{r.class_id}")
        return "\n".join(lines) + "\n"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _valid_models(variant: str, N: int, F: Field) -> list[PottsModel]:
    out = []
    for A in F.elements():
        for B in F.elements():
            try:
                if variant == TAME:
                    out.append(PottsModel.tame(F, N, A, B))
                else:
                    out.append(PottsModel.wild(F, A, B))
            except SingularModel:
                continue
    return out


def _census(variant: str, N: int, F: Field, degree_cap: int) -> CensusReport:
    models = _valid_models(variant, N, F)
    js = [j_invariant(m) for m in models]
    buckets: dict[int, list[int]] = {}
    for i, j in enumerate(js):
        buckets.setdefault(j.v, []).append(i)
    uf = _UnionFind(len(models))
    max_deg = 0
    reps = []
    for key in sorted(buckets, key=lambda v: js[buckets[v][0]].index):
        members = buckets[key]
        reps.append(members[0])
        # a fixed representative can need a larger extension than the cap
        # (e.g. tenth roots over F_11), so join the bucket through any pair
        for a, i in enumerate(members):
            for k in members[a + 1:]:
                if uf.find(i) == uf.find(k):
                    continue
                res = is_isomorphic(models[i], models[k], degree_cap, CENSUS_FIELD_CAP)
                if not res.geometric:
                    raise AssertionError("equal j values were found non-isomorphic")
                if res.witness is not None:
                    max_deg = max(max_deg, res.witness_degree)
                    uf.union(i, k)
        if len({uf.find(i) for i in members}) != 1:
            raise SplittingCapExceeded(
                f"no witness chain up to degree {degree_cap} for j = {js[members[0]]!r}")
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if is_isomorphic(models[reps[a]], models[reps[b]], degree_cap, CENSUS_FIELD_CAP).geometric:
                raise AssertionError("distinct j values were found isomorphic")
    roots = sorted({uf.find(i) for i in range(len(models))})
    class_id = {r: k for k, r in enumerate(roots)}
    rows = tuple(CensusRow(m.A, m.B, j, class_id[uf.find(i)])
                 for i, (m, j) in enumerate(zip(models, js)))
    return CensusReport(variant, N, F.q, len(models), len(buckets), len(roots),
                        F.q - 1, max_deg, rows)


def census_tame(N: int, F: Field, degree_cap: int = WITNESS_DEGREE_CAP) -> CensusReport:
    """Bucket y^2 = x^2N + A x^N + B by j = B/(A^2 - 4B) with a fixed zeta."""
    if (2 * N) % F.p == 0:
        raise WrongCharacteristic(f"p = {F.p} divides 2N")
    return _census(TAME, N, F, degree_cap)


def census_wild(F: Field, degree_cap: int = WITNESS_DEGREE_CAP) -> CensusReport:
    """Bucket the Artin-Schreier models by j = 1/(A^2 - 4B)."""
    return _census(WILD, F.p, F, degree_cap)


@dataclass(frozen=True)
class CuspDescriptor:
    components: int
    genera: tuple[int, int]
    nodes: int
    j_limit: str

    @property
    def genus(self) -> int:
        """Arithmetic genus g1 + g2 + nodes - 1."""
        return sum(self.genera) + self.nodes - 1

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "genera": list(self.genera),
            "nodes": self.nodes,
            "j_limit": self.j_limit,
        }


def cusp_combinatorics(N: int) -> tuple[CuspDescriptor, CuspDescriptor]:
    """The two stable limits: (j = infinity, j = 0).

    Two isomorphic branches of genus g1 meeting in h points, exchanged by
    the involution, satisfy h(N - h) = 2 g1 = N - h, whence h is N or 1.
    """
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and at least 3")
    sols = [h for h in range(1, N + 1) if h * (N - h) == N - h]
    if sols != [1, N]:
        raise AssertionError(f"unexpected node counts {sols}")
    out = {}
    for h in sols:
        g = (N - h) // 2
        d = CuspDescriptor(2, (g, g), h, "infinity" if h == N else "0")
        if d.genus != N - 1:
            raise AssertionError("genus accounting fails")
        out[h] = d
    return out[N], out[1]


@dataclass(frozen=True)
class DegenerationCheck:
    N: int
    field: Field
    splitting_field: Field
    perfect_square: bool
    components_distinct: bool
    intersection: tuple[FieldElem, ...]
    descriptor: CuspDescriptor

    @property
    def certified(self) -> bool:
        d = self.descriptor
        return (self.perfect_square and self.components_distinct
                and len(self.intersection) == self.N == d.nodes and d.genera == (0, 0))

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "field": self.field.name,
            "splitting_field": self.splitting_field.name,
            "perfect_square": self.perfect_square,
            "components_distinct": self.components_distinct,
            "intersection_points": len(self.intersection),
            "certified": self.certified,
        }


def degeneration_check(N: int, F: Field, cap: int = SPLITTING_CAP) -> DegenerationCheck:
    """Specialize y^2 = x^2N + 2 x^N + t at t = 1 and read off the j = infinity cusp."""
    if (2 * N) % F.p == 0:
        raise WrongCharacteristic(f"p = {F.p} divides 2N")
    x = Poly.x(F)
    t = F.one
    rhs = x ** (2 * N) + x**N * 2 + t
    branch = x**N + 1
    square = rhs == branch * branch
    # y = branch and y = -branch agree exactly where branch vanishes
    distinct = branch != -branch
    E, roots = roots_over_splitting_field(branch, cap)
    pts = tuple(roots)
    if len(set(pts)) != len(pts):
        raise AssertionError("x^N + 1 has repeated roots")
    return DegenerationCheck(N, F, E, square, distinct, pts, cusp_combinatorics(N)[0])
