"""Potts curve models, invariants, isomorphisms and automorphism groups.

Tame models are ``y^2 = x^(2N) + A x^N + B`` with p not dividing 2N; wild
models are ``y^2 = (x^p - x)^2 + A (x^p - x) + B`` with N = p.  The branch
set of the hyperelliptic involution is the zero set of the right-hand side.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (
    EvenN,
    NoSuchRoot,
    RootExtractionFailed,
    SingularModel,
    SplittingCapExceeded,
    VariantMismatch,
    WrongCharacteristic,
)
from .field_tower import (
    SIZE_CAP,
    Field,
    FieldElem,
    common_field,
    element_order,
    embed,
    make_field,
    primitive_root_of_unity,
    square_root,
)
from .pgl2 import (
    ProjMap,
    SubgroupClass,
    classify_subgroup,
    compose,
    order_by_powering,
    stabilizer_of_set,
)
from .poly_ring import SPLITTING_CAP, Poly, roots_over_splitting_field

TAME = "tame"
WILD = "wild"
MIN_SAMPLE_POINTS = 20


def multiplicative_order_mod(q: int, n: int) -> int:
    k, x = 1, q % n
    while x != 1 % n:
        x = x * q % n
        k += 1
    return k


@functools.lru_cache(maxsize=None)
def default_zeta(F: Field, N: int) -> FieldElem:
    """The deterministic primitive N-th root of unity over the smallest
    extension of F that contains one."""
    if F.q % N == 0:
        raise NoSuchRoot(f"no primitive {N}-th root of unity in characteristic {F.p}")
    d = multiplicative_order_mod(F.q, N)
    return primitive_root_of_unity(make_field(F.p, F.s * d), N)


@dataclass(frozen=True)
class PottsModel:
    variant: str
    N: int
    field: Field
    A: FieldElem
    B: FieldElem
    zeta: Optional[FieldElem] = None

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "A", F(self.A))
        object.__setattr__(self, "B", F(self.B))
        if self.variant == TAME:
            if self.N < 3 or self.N % 2 == 0:
                raise EvenN(f"N = {self.N} must be odd and at least 3")
            if (2 * self.N) % F.p == 0:
                raise WrongCharacteristic(f"p = {F.p} divides 2N = {2 * self.N}")
            if not self.B:
                raise SingularModel("B = 0")
            if self.zeta is None:
                object.__setattr__(self, "zeta", default_zeta(F, self.N))
            z = self.zeta
            if z.field.p != F.p or z.field.s % F.s or element_order(z) != self.N:
                raise ValueError(f"zeta must be a primitive {self.N}-th root of unity")
        elif self.variant == WILD:
            if self.N != F.p:
                raise WrongCharacteristic(f"wild models need N = p, got N = {self.N}, p = {F.p}")
            if self.zeta is not None:
                raise ValueError("wild models have no zeta")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")
        if not (self.A * self.A - 4 * self.B):
            raise SingularModel("A^2 - 4B = 0")

    @classmethod
    def tame(cls, F: Field, N: int, A, B, zeta: FieldElem | None = None) -> PottsModel:
        return cls(TAME, N, F, A, B, zeta)

    @classmethod
    def wild(cls, F: Field, A, B) -> PottsModel:
        return cls(WILD, F.p, F, A, B)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def genus(self) -> int:
        return self.N - 1

    def rhs(self, ring: Field | None = None) -> Poly:
        """The right-hand side f(x) of y^2 = f(x) as a polynomial."""
        F = ring or self.field
        A, B = embed(self.A, F), embed(self.B, F)
        N = self.N
        if self.variant == TAME:
            return Poly([B] + [0] * (N - 1) + [A] + [0] * (N - 1) + [1], F)
        u = Poly([0, -1] + [0] * (N - 2) + [1], F)
        return u * u + u * A + B

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "N": self.N,
            "field": self.field.name,
            "A": self.A.coeffs(),
            "B": self.B.coeffs(),
        }
        return out


@dataclass(frozen=True)
class BranchData:
    field: Field
    points: tuple
    orbits: tuple
    sigma0: ProjMap
    genus: int
    r: Optional[FieldElem] = None
    s: Optional[FieldElem] = None
    alpha: Optional[FieldElem] = None
    beta: Optional[FieldElem] = None


def _orbit(M: ProjMap, x, n: int) -> list:
    out = [x]
    for _ in range(n - 1):
        out.append(M(out[-1]))
    return out


@functools.lru_cache(maxsize=4096)
def validate(model: PottsModel, cap: int = SPLITTING_CAP, field_cap: int = SIZE_CAP) -> BranchData:
    """Compute the branch set and check the genus by Riemann-Hurwitz."""
    f = model.rhs()
    E, roots = roots_over_splitting_field(f, cap, field_cap)
    if model.variant == TAME:
        E = common_field(E, model.zeta.field)
        roots = sorted((embed(r, E) for r in roots), key=lambda r: r.v)
        zeta = embed(model.zeta, E)
        sigma0 = ProjMap(zeta, 0, 0, 1, E)
    else:
        sigma0 = ProjMap(1, 1, 0, 1, E)
    distinct = {r.v for r in roots}
    if len(distinct) != len(roots) or len(roots) != 2 * model.N:
        raise SingularModel("branch points are not 2N distinct points")
    alpha = roots[0]
    orb_a = _orbit(sigma0, alpha, model.N)
    beta = next(r for r in roots if r not in orb_a)
    orb_b = _orbit(sigma0, beta, model.N)
    if {x.v for x in orb_a + orb_b} != distinct:
        raise AssertionError("branch set is not a union of two sigma_0 orbits")
    # 2g - 2 = 2(-2) + |Sigma| for the double cover of the line
    genus = (len(roots) - 4) // 2 + 1
    if genus != model.N - 1:
        raise AssertionError(f"genus {genus} differs from N - 1")
    r = s = None
    if model.variant == WILD:
        p = model.p
        r, s = alpha**p - alpha, beta**p - beta
        if r == s or r * r + embed(model.A, E) * r + embed(model.B, E):
            raise AssertionError("Artin-Schreier data inconsistent")
    return BranchData(E, tuple(roots), (tuple(orb_a), tuple(orb_b)), sigma0, genus, r, s, alpha, beta)


def j_invariant(model: PottsModel) -> FieldElem:
    disc = model.A * model.A - 4 * model.B
    if model.variant == TAME:
        return model.B / disc
    return disc.inverse()


def canonical_model_from_j(N: int, F: Field, j, variant: str = TAME) -> PottsModel:
    j = F(j)
    if not j:
        raise SingularModel("j = 0 is not attained")
    if variant == WILD:
        if N != F.p:
            raise WrongCharacteristic("wild models need N = p")
        return PottsModel.wild(F, 0, -(4 * j).inverse())
    if j == -F(4).inverse():
        return PottsModel.tame(F, N, 0, -1)
    a = 1 + 4 * j
    return PottsModel.tame(F, N, a, j * a)


# -- explicit automorphisms ----------------------------------------------------


class AutomorphismMap:
    """(x, y) -> (M x, e * y / (c x + d)^k) for a 2x2 matrix M and scalar e.

    ``k`` is half the degree of the model's right-hand side.  The pair
    (M, e) and (l M, l^k e) define the same map; equality compares
    normalized pairs.
    """

    __slots__ = ("M", "e", "k", "field")

    def __init__(self, M: tuple, e: FieldElem, k: int):
        a, b, c, d = M
        F = e.field
        lead = next(x for x in (a, b, c, d) if x)
        inv = lead.inverse()
        self.M = (a * inv, b * inv, c * inv, d * inv)
        self.e = e * inv**k
        self.k = k
        self.field = F

    def __eq__(self, other):
        if not isinstance(other, AutomorphismMap):
            return NotImplemented
        return self.M == other.M and self.e == other.e

    def __hash__(self):
        return hash((tuple(x.v for x in self.M), self.e.v))

    def __mul__(self, other: AutomorphismMap) -> AutomorphismMap:
        a1, b1, c1, d1 = self.M
        a2, b2, c2, d2 = other.M
        M = (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)
        return AutomorphismMap(M, self.e * other.e, self.k)

    def inverse(self) -> AutomorphismMap:
        a, b, c, d = self.M
        det = a * d - b * c
        return AutomorphismMap((d, -b, -c, a), det**self.k / self.e, self.k)

    def __pow__(self, n: int) -> AutomorphismMap:
        if n < 0:
            return self.inverse() ** (-n)
        out = identity_map(self.field, self.k)
        for _ in range(n):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return self == identity_map(self.field, self.k)

    def proj(self) -> ProjMap:
        return ProjMap(*self.M, field=self.field)

    def order(self, bound: int = 10_000) -> int:
        cur = self
        for n in range(1, bound + 1):
            if cur.is_identity():
                return n
            cur = cur * self
        raise AssertionError("order exceeds bound")

    def embed(self, E: Field) -> AutomorphismMap:
        return AutomorphismMap(tuple(embed(x, E) for x in self.M), embed(self.e, E), self.k)

    def __call__(self, pt: tuple):
        """Image of an affine point, or None where the formula has a pole."""
        x, y = pt
        a, b, c, d = self.M
        den = c * x + d
        if not den:
            return None
        return (a * x + b) / den, self.e * y / den**self.k

    def __repr__(self):
        return f"AutomorphismMap({list(self.M)!r}, {self.e!r})"


def identity_map(F: Field, k: int) -> AutomorphismMap:
    return AutomorphismMap((F.one, F.zero, F.zero, F.one), F.one, k)


@dataclass
class AutomorphismReport:
    field: Field
    sigma: AutomorphismMap
    tau: AutomorphismMap
    mu: AutomorphismMap
    relations: dict = dc_field(default_factory=dict)
    sampled_points: int = 0

    @property
    def ok(self) -> bool:
        return all(self.relations.values())


def sample_points(model: PottsModel, E: Field, count: int) -> list[tuple]:
    """First ``count`` affine points (x, y) with x, y nonzero in field order."""
    f = model.rhs(E)
    out = []
    for x in E.nonzero_elements():
        v = f(x)
        if v and v.is_square():
            out.append((x, square_root(v)))
            if len(out) >= count:
                break
    return out


def _automorphism_field(model: PottsModel, cap: int, field_cap: int) -> Field:
    F = model.field
    if model.variant == WILD:
        return validate(model, cap, field_cap).field
    N = model.N
    x = Poly.x(F)
    g = (x**N - model.B) * (x * x - model.B) * (x**N - 1)
    try:
        E, _ = roots_over_splitting_field(g, cap, field_cap)
    except SplittingCapExceeded as exc:
        raise RootExtractionFailed(str(exc)) from exc
    return common_field(E, model.zeta.field)


def automorphisms(model: PottsModel, cap: int = SPLITTING_CAP,
                  field_cap: int = SIZE_CAP) -> AutomorphismReport:
    """sigma, tau, mu with their relations checked symbolically and on points."""
    E = _automorphism_field(model, cap, field_cap)
    k = model.N
    one, zero = E.one, E.zero
    tau = AutomorphismMap((one, zero, zero, one), -one, k)
    if model.variant == TAME:
        zeta = embed(model.zeta, E)
        B = embed(model.B, E)
        sigma = AutomorphismMap((zeta, zero, zero, one), one, k)
        _, broots = roots_over_splitting_field(Poly([-B] + [0] * (k - 1) + [1], E))
        b = broots[0]
        sqrt_b = square_root(B)
        if sqrt_b is None:
            raise RootExtractionFailed("B has no square root in the extension")
        mu = AutomorphismMap((zero, b, one, zero), sqrt_b, k)
    else:
        bd = validate(model, cap, field_cap)
        sigma = AutomorphismMap((one, one, zero, one), one, k)
        mu = AutomorphismMap((-one, bd.alpha + bd.beta, zero, one), one, k)

    ident = identity_map(E, k)
    rel = {
        "sigma^N": sigma**model.N == ident,
        "tau^2": tau * tau == ident,
        "mu^2": mu * mu == ident,
        "tau_central": tau * sigma == sigma * tau and tau * mu == mu * tau,
        "mu_sigma_mu": mu * sigma * mu.inverse() == sigma.inverse(),
    }

    S = E
    pts = sample_points(model, S, MIN_SAMPLE_POINTS)
    while len(pts) < MIN_SAMPLE_POINTS:
        S = make_field(S.p, 2 * S.s)
        pts = sample_points(model, S, MIN_SAMPLE_POINTS)
    maps = {name: m.embed(S) for name, m in (("sigma", sigma), ("tau", tau), ("mu", mu))}
    f = model.rhs(S)

    def on_curve(pt):
        return pt is None or pt[1] * pt[1] == f(pt[0])

    def agree(m1, m2, pt):
        a, b = m1(pt), m2(pt)
        return a is None or b is None or a == b

    sg, ta, mu_s = maps["sigma"], maps["tau"], maps["mu"]
    ident_s = identity_map(S, k)
    rel["maps_preserve_curve"] = all(on_curve(m(pt)) for m in maps.values() for pt in pts)
    rel["pointwise_relations"] = all(
        agree(sg**model.N, ident_s, pt)
        and agree(ta * ta, ident_s, pt)
        and agree(mu_s * mu_s, ident_s, pt)
        and agree(ta * sg, sg * ta, pt)
        and agree(mu_s * sg * mu_s, sg.inverse(), pt)
        for pt in pts
    )
    return AutomorphismReport(E, sigma, tau, mu, rel, len(pts))


# -- isomorphism ---------------------------------------------------------------


@dataclass(frozen=True)
class IsoResult:
    geometric: bool
    chi_class_match: Optional[bool]
    witness: Optional[FieldElem] = None
    witness_case: Optional[int] = None
    witness_degree: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "geometric": self.geometric,
            "chi_class_match": self.chi_class_match,
            "witness": None if self.witness is None else self.witness.coeffs(),
            "witness_case": self.witness_case,
            "witness_degree": self.witness_degree,
        }


def _zeta_relation(z1: FieldElem, z2: FieldElem) -> Optional[int]:
    """1 if z2 == z1, 2 if z2 == 1/z1, None otherwise."""
    E = common_field(z1.field, z2.field)
    a, b = embed(z1, E), embed(z2, E)
    if a == b:
        return 1
    if a.inverse() == b:
        return 2
    return None


def _least_root(poly: Poly, cap: int, field_cap: int = SIZE_CAP) -> tuple[FieldElem, int] | None:
    try:
        E, roots = roots_over_splitting_field(poly, cap, field_cap)
    except SplittingCapExceeded:
        return None
    if not roots:
        return None
    return roots[0], E.s // poly.ring.s


def is_isomorphic(m1: PottsModel, m2: PottsModel, search_extension_cap: int = 6,
                  field_cap: int = SIZE_CAP) -> IsoResult:
    """Decide isomorphism of Potts curves and search for an explicit witness."""
    if m1.variant != m2.variant or m1.N != m2.N or m1.p != m2.p:
        raise VariantMismatch("models must share variant, N and characteristic")
    F = common_field(m1.field, m2.field)
    A1, B1, A2, B2 = (embed(v, F) for v in (m1.A, m1.B, m2.A, m2.B))
    j_equal = embed(j_invariant(m1), F) == embed(j_invariant(m2), F)
    N = m1.N
    if m1.variant == WILD:
        if not j_equal:
            return IsoResult(False, None)
        c = (A2 - A1) / 2
        if B2 != B1 + c * A1 + c * c:
            raise AssertionError("equal j but Artin-Schreier relation fails")
        x = Poly.x(F)
        found = _least_root(x**N - x - c, search_extension_cap, field_cap)
        if found is None:
            return IsoResult(True, None)
        t, deg = found
        return IsoResult(True, None, t, None, deg)

    case = _zeta_relation(m1.zeta, m2.zeta)
    chi_match = case is not None
    if not (j_equal and chi_match):
        return IsoResult(False, chi_match)
    x = Poly.x(F)
    if case == 1:
        # A2 = l^N A1, B2 = l^2N B1
        if A1:
            mu = A2 / A1
            if mu * mu * B1 != B2:
                raise AssertionError("equal j but scaling relation fails")
            target = x**N - mu
        else:
            target = x ** (2 * N) - B2 / B1
    else:
        # A2 = l^N A1 / B1, B2 = l^2N / B1
        if A1:
            mu = A2 * B1 / A1
            if mu * mu != B2 * B1:
                raise AssertionError("equal j but inversion relation fails")
            target = x**N - mu
        else:
            target = x ** (2 * N) - B2 * B1
    found = _least_root(target, search_extension_cap, field_cap)
    if found is None:
        return IsoResult(True, True, None, case)
    lam, deg = found
    return IsoResult(True, True, lam, case, deg)


def check_witness(m1: PottsModel, m2: PottsModel, res: IsoResult) -> bool:
    """Re-verify an explicit witness in its own field."""
    if res.witness is None:
        return False
    w = res.witness
    E = w.field
    A1, B1, A2, B2 = (embed(v, E) for v in (m1.A, m1.B, m2.A, m2.B))
    N = m1.N
    if m1.variant == WILD:
        c = w**N - w
        return A2 == A1 + 2 * c and B2 == B1 + c * A1 + c * c
    ln = w**N
    if res.witness_case == 1:
        return A2 == ln * A1 and B2 == ln * ln * B1
    return A2 == ln * A1 / B1 and B2 == ln * ln / B1


# -- automorphism groups -----------------------------------------------------


@dataclass(frozen=True)
class AutClassification:
    tag: str
    order: int
    equivariant_order: int
    q: Optional[int] = None

    @property
    def name(self) -> str:
        return f"{self.tag}({self.q})" if self.q is not None else self.tag

    def to_json(self) -> dict:
        return {"class": self.name, "order": self.order, "equivariant_order": self.equivariant_order}


def _is_power_of(n: int, p: int) -> bool:
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def classify_aut(model: PottsModel) -> AutClassification:
    N, p = model.N, model.p
    F = model.field
    j = j_invariant(model)
    if model.variant == WILD:
        # at p = 3 the stabilizer of alpha is cyclic of order 4 = q + 1 and
        # the branch set for j = -1/4 is P^1(F_3), giving PGL2(F_3) = S4
        if p == 3 and j == -F(4).inverse():
            return AutClassification("RepGroupSym4", 48, 2 * p)
        return AutClassification("WildTwoTimesDihedralP", 4 * p, 2 * p)
    quarter = j == -F(4).inverse()
    if N == 3 and p != 5 and j == -F(54).inverse():
        return AutClassification("RepGroupSym4", 48, 2 * N)
    q = 2 * N - 1
    if quarter and _is_power_of(q, p):
        return AutClassification("PGL2FiberProduct", 2 * q * (q * q - 1), 4 * N, q)
    if quarter:
        return AutClassification("TwoTimesDihedral2N", 8 * N, 4 * N)
    return AutClassification("TwoTimesDihedralN", 4 * N, 2 * N)


@dataclass(frozen=True)
class OracleResult:
    G_order: int
    aut_order: int
    equivariant_order: int
    G_class: SubgroupClass
    field: Field

    def to_json(self) -> dict:
        return {
            "G_order": self.G_order,
            "aut_order": self.aut_order,
            "equivariant_order": self.equivariant_order,
            "G_class": self.G_class.name,
            "G_aliases": list(self.G_class.aliases),
        }


def reduced_group(model: PottsModel, cap: int = SPLITTING_CAP, field_cap: int = SIZE_CAP) -> list[ProjMap]:
    bd = validate(model, cap, field_cap)
    return stabilizer_of_set(list(bd.points), bd.field)


def aut_order_oracle(model: PottsModel, cap: int = SPLITTING_CAP,
                     field_cap: int = SIZE_CAP) -> OracleResult:
    """Brute-force |Aut(C)| = 2 |G| with G the stabilizer of the branch set."""
    bd = validate(model, cap, field_cap)
    G = stabilizer_of_set(list(bd.points), bd.field)
    cls = classify_subgroup(G)
    s0 = bd.sigma0
    centralizer = [g for g in G if compose(g, s0) == compose(s0, g)]
    return OracleResult(len(G), 2 * len(G), 2 * len(centralizer), cls, bd.field)


def lift_to_curve(model: PottsModel, cap: int = SPLITTING_CAP,
                  field_cap: int = SIZE_CAP) -> list[AutomorphismMap]:
    """Every automorphism of the curve, as lifts (M, +-e) of the reduced group."""
    bd = validate(model, cap, field_cap)
    G = stabilizer_of_set(list(bd.points), bd.field)
    E = bd.field
    k = model.N
    f = model.rhs(E)
    kappas = []
    for g in G:
        a, b, c, d = g.entries()
        num = Poly([b, a], E)
        den = Poly([d, c], E)
        total = Poly([], E)
        for i, coef in enumerate(f.coeffs):
            if coef:
                total = total + num**i * den ** (2 * k - i) * coef
        kappa = total.lead / f.lead
        if total != f * kappa:
            raise AssertionError("homography does not preserve the branch polynomial")
        kappas.append(kappa)
    if not all(kp.is_square() for kp in kappas):
        E2 = make_field(E.p, 2 * E.s, max(field_cap, E.q**2))
        G = [g.embed(E2) for g in G]
        kappas = [embed(kp, E2) for kp in kappas]
        E = E2
    out = []
    for g, kp in zip(G, kappas):
        e = square_root(kp)
        out.append(AutomorphismMap(g.entries(), e, k))
        out.append(AutomorphismMap(g.entries(), -e, k))
    return out


def order_multiset(maps: list[AutomorphismMap]) -> dict[int, int]:
    return dict(sorted(Counter(m.order() for m in maps).items()))


def gl2_order_multiset(F: Field) -> dict[int, int]:
    """Element orders of GL_2(F) by exhaustive enumeration."""
    elems = list(F.elements())
    counts: Counter = Counter()
    one, zero = F.one, F.zero
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    if not (a * d - b * c):
                        continue
                    x = (a, b, c, d)
                    n = 1
                    while x != (one, zero, zero, one):
                        x = (x[0] * a + x[1] * c, x[0] * b + x[1] * d,
                             x[2] * a + x[3] * c, x[2] * b + x[3] * d)
                        n += 1
                    counts[n] += 1
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class SquareRootCheck:
    S: ProjMap
    M_zeta: ProjMap
    square_matches: bool
    order: int


def quarter_j_square_root_check(N: int, F: Field) -> SquareRootCheck:
    """S = M_zeta + (phi + 1/phi) id squares to M_zeta, phi^2 = zeta."""
    phi = primitive_root_of_unity(F, 2 * N)
    zeta = phi * phi
    s = zeta + zeta.inverse()
    c = phi + phi.inverse()
    M = ProjMap(s, s - 2, 1, 2, F)
    S = ProjMap(s + c, s - 2, 1, 2 + c, F)
    ok = compose(S, S) == M
    order = order_by_powering(S)
    if not ok or order != 2 * N:
        raise AssertionError("square root of M_zeta check failed")
    return SquareRootCheck(S, M, ok, order)
