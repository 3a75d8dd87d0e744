"""PGL_2 over a finite field: normalized homographies, element orders,
subgroup recognition against Dickson's list, and set stabilizers.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Iterable, Sequence, Union

from .errors import (
    ClosureCapExceeded,
    DegeneratePoints,
    IdentityElement,
    MixedFields,
    NotAGroup,
    SizeCapExceeded,
    TooFewPoints,
    UnrecognizedSubgroup,
)
from .field_tower import Field, FieldElem, divisors, embed, primitive_root_of_unity
from .poly_ring import Poly

CLOSURE_CAP = 10080
SURVEY_CAP = 200_000


class _Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ProjPoint = Union[FieldElem, _Infinity]


def point_key(P: ProjPoint) -> int:
    """Sort key: finite points by element order, infinity last."""
    return 1 << 62 if P is INF else P.v


def sort_points(points: Iterable[ProjPoint]) -> list[ProjPoint]:
    return sorted(points, key=point_key)


def homogeneous(P: ProjPoint, F: Field) -> tuple[FieldElem, FieldElem]:
    if P is INF:
        return F.one, F.zero
    return P, F.one


class ProjMap:
    """x -> (a x + b) / (c x + d), normalized so the first nonzero entry is 1."""

    __slots__ = ("field", "a", "b", "c", "d", "_key")

    def __init__(self, a, b, c, d, field: Field | None = None):
        F = field
        if F is None:
            F = next(e.field for e in (a, b, c, d) if isinstance(e, FieldElem))
        a, b, c, d = (F(e) for e in (a, b, c, d))
        if not (a * d - b * c):
            raise ValueError("singular matrix")
        lead = next(e for e in (a, b, c, d) if e)
        if lead != 1:
            inv = lead.inverse()
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.field = F
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = (a.v, b.v, c.v, d.v)

    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence]) -> ProjMap:
        (a, b), (c, d) = rows
        return cls(a, b, c, d, F)

    @classmethod
    def identity(cls, F: Field) -> ProjMap:
        return cls(1, 0, 0, 1, F)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return self._key

    def entries(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        return self.a, self.b, self.c, self.d

    def rows(self) -> list[list[FieldElem]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def det(self) -> FieldElem:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> FieldElem:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self._key == (1, 0, 0, 1)

    def __eq__(self, other):
        if not isinstance(other, ProjMap):
            return NotImplemented
        return self.field is other.field and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: ProjMap) -> bool:
        return self._key < other._key

    def __mul__(self, other: ProjMap) -> ProjMap:
        return compose(self, other)

    def __pow__(self, e: int) -> ProjMap:
        if e < 0:
            return inverse(self) ** (-e)
        result = ProjMap.identity(self.field)
        base = self
        while e:
            if e & 1:
                result = compose(result, base)
            e >>= 1
            if e:
                base = compose(base, base)
        return result

    def __call__(self, P: ProjPoint) -> ProjPoint:
        return apply(self, P)

    def embed(self, E: Field) -> ProjMap:
        return ProjMap(*(embed(e, E) for e in self.entries()), field=E)

    def to_json(self) -> list:
        return [[self.a.coeffs(), self.b.coeffs()], [self.c.coeffs(), self.d.coeffs()]]

    def __repr__(self):
        return f"[[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]]"


def compose(f: ProjMap, g: ProjMap) -> ProjMap:
    """f after g (matrix product f*g)."""
    if f.field is not g.field:
        raise MixedFields(f"{f.field!r} vs {g.field!r}")
    return ProjMap(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
        f.field,
    )


def inverse(f: ProjMap) -> ProjMap:
    return ProjMap(f.d, -f.b, -f.c, f.a, f.field)


def apply(f: ProjMap, P: ProjPoint) -> ProjPoint:
    if P is INF:
        return f.a / f.c if f.c else INF
    if P.field is not f.field:
        raise MixedFields(f"{P.field!r} point under a map over {f.field!r}")
    den = f.c * P + f.d
    if not den:
        return INF
    return (f.a * P + f.b) / den


def _require_nonidentity(A: ProjMap) -> None:
    if A.is_identity():
        raise IdentityElement("the identity has no order in this sense")


def conjugacy_invariant(A: ProjMap) -> FieldElem:
    """tr(A)^2 / det(A), a class function on PGL_2."""
    _require_nonidentity(A)
    return A.trace * A.trace / A.det


@functools.lru_cache(maxsize=None)
def _order_from_invariant(F: Field, code: int) -> int:
    inv = FieldElem(F, code)
    c = inv - 2
    if c == -2:
        return 2
    # zeta is the class of X in F[X]/(X^2 - cX + 1), which is F_{q^2} when
    # the quadratic is irreducible and F x F when zeta already lies in F
    quad = Poly([1, -c, 1], F)
    zeta = Poly.x(F)
    one = Poly([1], F)
    if (zeta.powmod(2, quad) + 2 * zeta + 1) % quad != (zeta * inv) % quad:
        raise AssertionError("eigenvalue ratio does not satisfy the trace relation")
    q = F.q
    for n in sorted(set(divisors(q - 1)) | set(divisors(q + 1))):
        if zeta.powmod(n, quad) == one:
            return n
    raise AssertionError("order does not divide q - 1 or q + 1")  # pragma: no cover


def order_by_criterion(A: ProjMap) -> int:
    """Order of a non-identity element from its trace/determinant relation.

    Unipotent elements (tr^2 = 4 det) have order p.  Otherwise the ratio
    zeta of the eigenvalues is a root of X^2 - (tr^2/det - 2) X + 1, and the
    order is the least divisor n of q - 1 or q + 1 with zeta^n = 1.
    """
    _require_nonidentity(A)
    F = A.field
    tr2 = A.trace * A.trace
    if tr2 == 4 * A.det:
        return F.p
    return _order_from_invariant(F, (tr2 / A.det).v)


def element_order(A: ProjMap) -> int:
    """Order of any element, identity included."""
    return 1 if A.is_identity() else order_by_criterion(A)


def order_by_powering(A: ProjMap) -> int:
    _require_nonidentity(A)
    bound = A.field.q + 1
    cur = A
    for n in range(1, bound + 1):
        if cur.is_identity():
            return n
        cur = compose(cur, A)
    raise AssertionError("order exceeds q + 1")  # pragma: no cover


def standard_order_n(F: Field, n: int) -> ProjMap:
    """M_zeta = [[s, s - 2], [1, 2]] with s = zeta + 1/zeta, or x -> x + 1 when n = p.

    zeta is the deterministic primitive n-th root of unity of ``F``.  For
    n = 2 the formula degenerates and x -> -x is returned; for n = 1 the
    identity.
    """
    if n == F.p:
        return ProjMap(1, 1, 0, 1, F)
    if n == 1:
        return ProjMap.identity(F)
    if n == 2:
        primitive_root_of_unity(F, 2)
        return ProjMap(-1, 0, 0, 1, F)
    zeta = primitive_root_of_unity(F, n)
    s = zeta + zeta.inverse()
    return ProjMap(s, s - 2, 1, 2, F)


def four_point_involution(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint,
                          F: Field | None = None) -> ProjMap:
    """The trace-zero homography swapping a <-> b and c <-> d."""
    if F is None:
        F = next(P.field for P in (a, b, c, d) if P is not INF)
    (a1, a2), (b1, b2), (c1, c2), (d1, d2) = (homogeneous(P, F) for P in (a, b, c, d))
    pts = [(a1, a2), (b1, b2), (c1, c2), (d1, d2)]
    for i in range(4):
        for j in range(i + 1, 4):
            if not (pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0]):
                raise DegeneratePoints("the four points must be pairwise distinct")
    m11 = a1 * b1 * c2 * d2 - c1 * d1 * a2 * b2
    m12 = a1 * c1 * d1 * b2 + b1 * c1 * d1 * a2 - a1 * b1 * c1 * d2 - a1 * b1 * d1 * c2
    m21 = (a1 * b2 + a2 * b1) * c2 * d2 - (c1 * d2 + c2 * d1) * a2 * b2
    return ProjMap(m11, m12, m21, -m11, F)


def four_point_determinant(a, b, c, d, F: Field) -> FieldElem:
    """-(a1c2 - a2c1)(a1d2 - a2d1)(b1c2 - b2c1)(b1d2 - b2d1), unnormalized."""
    (a1, a2), (b1, b2), (c1, c2), (d1, d2) = (homogeneous(P, F) for P in (a, b, c, d))
    return -(a1 * c2 - a2 * c1) * (a1 * d2 - a2 * d1) * (b1 * c2 - b2 * c1) * (b1 * d2 - b2 * d1)


# -- subgroups ----------------------------------------------------------------


def subgroup_closure(generators: Sequence[ProjMap], cap: int = CLOSURE_CAP) -> list[ProjMap]:
    """The subgroup generated by ``generators``, sorted by entry codes."""
    if not generators:
        raise ValueError("need at least one generator")
    F = generators[0].field
    for g in generators:
        if g.field is not F:
            raise MixedFields("generators over different fields")
    ident = ProjMap.identity(F)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise ClosureCapExceeded(f"closure exceeds {cap} elements")
                queue.append(y)
    return sorted(seen)


def is_subgroup(G: Iterable[ProjMap]) -> bool:
    """Exact test that a finite set of maps is closed under composition."""
    elems = set(G)
    if not elems:
        return False
    F = next(iter(elems)).field
    if ProjMap.identity(F) not in elems:
        return False
    gens: list[ProjMap] = []
    H = {ProjMap.identity(F)}
    for g in sorted(elems):
        if g in H:
            continue
        gens.append(g)
        try:
            H = set(subgroup_closure(gens, cap=len(elems)))
        except ClosureCapExceeded:
            return False
        if not H <= elems:
            return False
    return H == elems


@dataclass(frozen=True)
class SubgroupClass:
    tag: str
    params: tuple[int, ...]
    order: int
    aliases: tuple[str, ...] = dc_field(default=())

    @property
    def name(self) -> str:
        if not self.params:
            return self.tag
        return f"{self.tag}({','.join(map(str, self.params))})"

    def to_json(self) -> dict:
        return {"class": self.name, "order": self.order, "aliases": list(self.aliases)}


_MODULAR_ALIASES = {
    ("PGL2", 3): ("Sym4",),
    ("PSL2", 3): ("Alt4",),
    ("PSL2", 5): ("Alt5",),
    ("PGL2", 5): ("Sym5",),
    ("PSL2", 9): ("Alt6",),
}


def _p_part(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, p**k


def _classical_aliases(n: int, orders: set[int]) -> tuple[str, ...]:
    if n in orders:
        return (f"Cyclic({n})",)
    if n % 2 == 0 and n >= 4 and (n // 2) in orders:
        return (f"Dihedral({n // 2})",)
    return ()


def classify_subgroup(G: Sequence[ProjMap], check: bool = True) -> SubgroupClass:
    """Identify a finite subgroup of PGL_2(F_q) on Dickson's list."""
    elems = list(G)
    if not elems:
        raise NotAGroup("empty set")
    if check and not is_subgroup(elems):
        raise NotAGroup("the set is not closed under composition")
    F = elems[0].field
    p = F.p
    n = len(elems)
    orders_of = {g: element_order(g) for g in elems}
    orders = set(orders_of.values())

    if n % p:
        if n in orders:
            return SubgroupClass("Cyclic", (n,), n)
        if n % 2 == 0 and n >= 4 and (n // 2) in orders:
            return SubgroupClass("Dihedral", (n // 2,), n)
        if n == 12 and orders == {1, 2, 3}:
            return SubgroupClass("Alt4", (), n)
        if n == 24 and orders == {1, 2, 3, 4}:
            return SubgroupClass("Sym4", (), n)
        if n == 60 and orders == {1, 2, 3, 5}:
            return SubgroupClass("Alt5", (), n)
        raise UnrecognizedSubgroup(f"order {n} with element orders {sorted(orders)}")

    # p divides |G|
    k, pk = _p_part(n, p)
    P = [g for g in elems if orders_of[g] in (1, p)]
    if len(P) == pk:
        Pset = set(P)
        closed = all(compose(x, y) in Pset for x in P for y in P)
        abelian = closed and all(compose(x, y) == compose(y, x) for x in P for y in P)
        c = n // pk
        if abelian and c in orders:
            return SubgroupClass("SemidirectPC", (k, c), n, _classical_aliases(n, orders))
    if p == 3 and n == 60 and orders == {1, 2, 3, 5}:
        return SubgroupClass("Alt5", (), n)
    for kk in range(1, k + 1):
        qq = p**kk
        big = qq * (qq * qq - 1)
        spectrum_ok = all(o == p or (qq - 1) % o == 0 or (qq + 1) % o == 0 for o in orders)
        if n == big // 2 and spectrum_ok and (qq + 1) // 2 in orders:
            return SubgroupClass("PSL2", (qq,), n, _MODULAR_ALIASES.get(("PSL2", qq), ()))
        if n == big and spectrum_ok and qq + 1 in orders:
            return SubgroupClass("PGL2", (qq,), n, _MODULAR_ALIASES.get(("PGL2", qq), ()))
    raise UnrecognizedSubgroup(f"order {n} with element orders {sorted(orders)}")


def all_elements(F: Field, cap: int = SURVEY_CAP) -> list[ProjMap]:
    """Every element of PGL_2(F), one normalized representative each."""
    q = F.q
    if q**3 - q > cap:
        raise SizeCapExceeded(f"|PGL2(F_{q})| exceeds the enumeration cap {cap}")
    out = []
    elems = list(F.elements())
    one, zero = F.one, F.zero
    for b in elems:
        for c in elems:
            for d in elems:
                if d - b * c:
                    out.append(ProjMap(one, b, c, d, F))
    for c in elems:
        for d in elems:
            if c:
                out.append(ProjMap(zero, one, c, d, F))
    return sorted(out)


@dataclass(frozen=True)
class OrderPSurvey:
    count: int
    all_in_psl2: bool
    fixed_points: tuple


def survey_order_p(F: Field, cap: int = SURVEY_CAP) -> OrderPSurvey:
    """Count order-p elements of PGL_2(F) and collect their fixed points."""
    count = 0
    in_psl = True
    fixed = set()
    fixed_pts = []
    for A in all_elements(F, cap):
        if A.is_identity():
            continue
        tr = A.trace
        if tr * tr != 4 * A.det:
            continue
        count += 1
        if not A.det.is_square():
            in_psl = False
        if A.c:
            x = (A.a - A.d) / (2 * A.c)
        else:
            x = INF
        if point_key(x) not in fixed:
            fixed.add(point_key(x))
            fixed_pts.append(x)
    return OrderPSurvey(count, in_psl, tuple(sort_points(fixed_pts)))


def _triple_map(P0: ProjPoint, P1: ProjPoint, P2: ProjPoint, F: Field) -> ProjMap:
    """The homography sending inf, 0, 1 to P0, P1, P2."""
    (x1, x2), (y1, y2), (z1, z2) = (homogeneous(P, F) for P in (P0, P1, P2))
    # z = mu*x + lam*y
    det = x1 * y2 - x2 * y1
    if not det:
        raise DegeneratePoints("points must be distinct")
    mu = (z1 * y2 - z2 * y1) / det
    lam = (x1 * z2 - x2 * z1) / det
    if not mu or not lam:
        raise DegeneratePoints("points must be distinct")
    return ProjMap(mu * x1, lam * y1, mu * x2, lam * y2, F)


def stabilizer_of_set(points: Sequence[ProjPoint], ambient: Field) -> list[ProjMap]:
    """All homographies over ``ambient`` mapping the finite set onto itself."""
    pts = [P if P is INF else embed(P, ambient) for P in points]
    keys = {point_key(P) for P in pts}
    if len(keys) != len(pts):
        raise DegeneratePoints("points must be pairwise distinct")
    if len(pts) < 3:
        raise TooFewPoints("need at least three points")
    base_inv = inverse(_triple_map(pts[0], pts[1], pts[2], ambient))
    out = []
    for Q0, Q1, Q2 in permutations(pts, 3):
        M = compose(_triple_map(Q0, Q1, Q2, ambient), base_inv)
        if all(point_key(apply(M, P)) in keys for P in pts):
            out.append(M)
    return sorted(out)


def projective_line(F: Field) -> list[ProjPoint]:
    return list(F.elements()) + [INF]
