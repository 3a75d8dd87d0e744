"""Norm polynomials of an order-p affine action and the wild invariant j.

A context fixes the action X -> tX + psi (Z = 1) with 1 + t + ... + t^(p-1) = 0,
together with the coefficients of H = U N^2 + A N + B, where N is the norm
polynomial of the action.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, replace
from typing import Optional

from .errors import (
    DegenerateChange,
    IndexOutOfRange,
    InvalidContext,
    SingularConfiguration,
    TEqualsOne,
)
from .field_tower import Field, FieldElem, element_order
from .poly_ring import Poly, resultant


@dataclass(frozen=True)
class NormContext:
    p: int
    field: Field
    t: FieldElem
    psi: FieldElem
    U: FieldElem
    A: FieldElem
    B: FieldElem

    def __post_init__(self):
        F = self.field
        for name in ("t", "psi", "U", "A", "B"):
            object.__setattr__(self, name, F(getattr(self, name)))
        if self.p % 2 == 0 or self.p < 3:
            raise InvalidContext("p must be an odd prime")
        total = F.zero
        power = F.one
        for _ in range(self.p):
            total = total + power
            power = power * self.t
        if total:
            raise InvalidContext("1 + t + ... + t^(p-1) must vanish")
        if self.t == 1 and not self.psi:
            raise InvalidContext("t = 1 requires psi != 0")
        if not self.U:
            raise InvalidContext("U must be nonzero")

    def normalized(self) -> NormContext:
        """The same context scaled so that U = 1."""
        inv = self.U.inverse()
        return replace(self, U=self.field.one, A=self.A * inv, B=self.B * inv)


def partial_sum(ctx: NormContext, i: int) -> FieldElem:
    """t^[i] = 1 + t + ... + t^(i-1), with t^[0] = 0."""
    if not 0 <= i <= ctx.p:
        raise IndexOutOfRange(f"index {i} outside 0..{ctx.p}")
    F = ctx.field
    total, power = F.zero, F.one
    for _ in range(i):
        total = total + power
        power = power * ctx.t
    return total


def norm_poly(ctx: NormContext) -> Poly:
    """N(X) = prod_i (X - t^[i] psi); invariant under X -> tX + psi."""
    F = ctx.field
    N = Poly([1], F)
    for i in range(ctx.p):
        N = N * Poly([-partial_sum(ctx, i) * ctx.psi, 1], F)
    if N.compose(Poly([ctx.psi, ctx.t], F)) != N:
        raise AssertionError("norm polynomial is not invariant")
    return N


def omega(ctx: NormContext) -> FieldElem:
    out = ctx.field.one
    for i in range(1, ctx.p):
        out = out * partial_sum(ctx, i)
    return out


def omega_and_p_identity(ctx: NormContext) -> FieldElem:
    """omega = t^[1] ... t^[p-1], checking p = omega (t - 1)^(p - 1) when t != 1.

    For t = 1 both sides vanish in characteristic p and only omega is
    returned.
    """
    w = omega(ctx)
    if ctx.t != 1 and w * (ctx.t - 1) ** (ctx.p - 1) != ctx.p:
        raise AssertionError("p = omega (t - 1)^(p - 1) fails")
    return w


@dataclass(frozen=True)
class HDelta:
    H: Poly
    delta: FieldElem


def delta(ctx: NormContext) -> FieldElem:
    """H evaluated homogeneously at (X, Z) = (-psi, t - 1)."""
    p, s, d = ctx.p, ctx.psi, ctx.t - 1
    return ctx.U * s ** (2 * p) - ctx.A * s**p * d**p + ctx.B * d ** (2 * p)


def build_H_delta(ctx: NormContext) -> HDelta:
    N = norm_poly(ctx)
    H = N * N * ctx.U + N * ctx.A + ctx.B
    return HDelta(H, delta(ctx))


@dataclass(frozen=True)
class ResultantCheck:
    lhs: FieldElem
    rhs: FieldElem

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def resultant_sides(ctx: NormContext) -> ResultantCheck:
    """Res(H, dH/dX) and -U^p omega^2p delta^(p-1) (A^2 - 4BU)^p."""
    if ctx.t == 1:
        raise TEqualsOne("the identity is stated for t != 1")
    hd = build_H_delta(ctx)
    lhs = resultant(hd.H, hd.H.derivative())
    p = ctx.p
    w = omega_and_p_identity(ctx)
    disc = ctx.A * ctx.A - 4 * ctx.B * ctx.U
    rhs = -(ctx.U**p) * w ** (2 * p) * hd.delta ** (p - 1) * disc**p
    return ResultantCheck(lhs, rhs)


def verify_resultant_identity(ctx: NormContext) -> bool:
    return resultant_sides(ctx).holds


def wild_j(ctx: NormContext) -> FieldElem:
    """j = U delta / (A^2 - 4UB)."""
    d = delta(ctx)
    disc = ctx.A * ctx.A - 4 * ctx.U * ctx.B
    if not d or not disc:
        raise SingularConfiguration("delta (A^2 - 4UB) vanishes")
    return ctx.U * d / disc


def tautological_j(t: FieldElem, lam: FieldElem, p: int) -> FieldElem:
    """Closed form (1 - lam (t-1)^p + (t-1)^2p) / (lam^2 - 4) for psi = U = B = 1."""
    d = t - 1
    den = lam * lam - 4
    num = 1 - lam * d**p + d ** (2 * p)
    if not den or not num:
        raise SingularConfiguration("the tautological curve is singular at this lambda")
    return num / den


# -- coordinate changes ------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    alpha: FieldElem
    beta: FieldElem


@dataclass(frozen=True)
class DeltaSwap:
    u: Optional[FieldElem] = None
    v: Optional[FieldElem] = None


@dataclass(frozen=True)
class ChangeReport:
    new: NormContext
    j_old: FieldElem
    j_new: FieldElem
    xi: FieldElem
    delta_product: Optional[FieldElem] = None

    @property
    def invariant(self) -> bool:
        return self.j_old == self.j_new


def _linear_product(roots_shift: list[FieldElem], lin: Poly, z: Poly) -> Poly:
    """prod_i (lin - c_i z) for linear polynomials lin, z in X."""
    F = lin.ring
    out = Poly([1], F)
    for c in roots_shift:
        out = out * (lin - z * c)
    return out


def change_coordinates(ctx: NormContext, mode) -> ChangeReport:
    """Transport a context to new coordinates and compare wild_j."""
    F = ctx.field
    p = ctx.p
    N = norm_poly(ctx)
    if isinstance(mode, Affine):
        alpha, beta = F(mode.alpha), F(mode.beta)
        if not alpha:
            raise DegenerateChange("alpha must be nonzero")
        psi2 = alpha * ctx.psi - (ctx.t - 1) * beta
        shifted = replace(ctx, psi=psi2)
        sums = [partial_sum(shifted, i) * psi2 for i in range(p)]
        Nprime = _linear_product(sums, Poly([beta, alpha], F), Poly([1], F))
        rest = Nprime - N * alpha**p
        if rest.degree > 0:
            raise AssertionError("N' - alpha^p N is not constant")
        xi = rest[0]
        U = ctx.U
        A2 = alpha**p * ctx.A - 2 * U * xi
        B2 = alpha ** (2 * p) * ctx.B - U * xi * xi - A2 * xi
        new = replace(ctx, psi=psi2, A=A2, B=B2)
        disc_old = ctx.A * ctx.A - 4 * U * ctx.B
        disc_new = A2 * A2 - 4 * U * B2
        if disc_new != alpha ** (2 * p) * disc_old:
            raise AssertionError("discriminant did not scale by alpha^2p")
        return ChangeReport(new, wild_j(ctx), wild_j(new), xi)

    if isinstance(mode, DeltaSwap):
        base = ctx.normalized()
        t, psi = base.t, base.psi
        if mode.u is None and mode.v is None:
            if t != 1:
                u, v = (t - 1).inverse(), F.zero
            else:
                u, v = F.zero, psi.inverse()
        else:
            u, v = F(mode.u), F(mode.v)
        if u * (t - 1) + v * psi != 1:
            raise DegenerateChange("(u, v) is not a Bezout pair for (t - 1, psi)")
        tinv = t.inverse()
        psi2 = tinv * v
        probe = replace(base, t=tinv, psi=psi2)
        sums = [partial_sum(probe, i) * psi2 for i in range(p)]
        Xp = Poly([-u, v], F)
        Zp = Poly([psi, t - 1], F)
        Nprime = _linear_product(sums, Xp, Zp)
        rest = Nprime - N * v**p
        if rest.degree > 0:
            raise AssertionError("N' - v^p N is not constant")
        xi = rest[0]
        if Zp**p != N * (t - 1) ** p + psi**p:
            raise AssertionError("Z'^p != psi^p + (t-1)^p N")
        n1, n2 = psi**p, -xi
        w1, w2 = -((t - 1) ** p), v**p
        U, A, B = base.U, base.A, base.B
        U2 = U * n1 * n1 + A * n1 * w1 + B * w1 * w1
        A2 = 2 * U * n1 * n2 + A * (n1 * w2 + n2 * w1) + 2 * B * w1 * w2
        B2 = U * n2 * n2 + A * n2 * w2 + B * w2 * w2
        new = NormContext(p, F, tinv, psi2, U2, A2, B2).normalized()
        prod = delta(new) * delta(base)
        if prod != 1:
            raise AssertionError("delta' delta != 1")
        return ChangeReport(new, wild_j(ctx), wild_j(new), xi, prod)

    raise TypeError(f"unknown coordinate change {mode!r}")


# -- invariant subspace ------------------------------------------------------


def _kernel(rows: list[list[FieldElem]], F: Field) -> list[list[FieldElem]]:
    """Basis of the right kernel of a matrix over F."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [F.zero] * ncols
        vec[fc] = F.one
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class SubspaceReport:
    dimension: int
    basis: tuple
    matches_norm: bool


def invariant_subspace(ctx: NormContext) -> SubspaceReport:
    """Fixed space of f(X) -> f(tX + psi) on polynomials of degree <= p."""
    F = ctx.field
    p = ctx.p
    sub = Poly([ctx.psi, ctx.t], F)
    cols = []
    for k in range(p + 1):
        img = Poly.monomial(1, k, F).compose(sub) - Poly.monomial(1, k, F)
        cols.append([img[i] for i in range(p + 1)])
    rows = [[cols[k][i] for k in range(p + 1)] for i in range(p + 1)]
    basis = [Poly(v, F) for v in _kernel(rows, F)]
    N = norm_poly(ctx)
    one = Poly([1], F)
    # span{1, N} has dimension 2 and every basis vector must lie in it
    in_span = all((b - one * b[0]) == N * b[p] for b in basis)
    ok = len(basis) == 2 and in_span
    return SubspaceReport(len(basis), tuple(basis), ok)


def invariant_subspace_check(ctx: NormContext) -> bool:
    return invariant_subspace(ctx).matches_norm


@functools.lru_cache(maxsize=None)
def order_p_elements(F: Field, p: int) -> tuple[FieldElem, ...]:
    return tuple(x for x in F.nonzero_elements() if element_order(x) == p)


def random_context(F: Field, p: int, rng: random.Random) -> NormContext:
    """A random context with t of exact order p (requires p | q - 1)."""
    ts = order_p_elements(F, p)
    if not ts:
        raise InvalidContext(f"{F!r} has no element of order {p}")
    t = rng.choice(ts)
    return NormContext(p, F, t, F.random_element(rng), F.random_nonzero(rng),
                       F.random_element(rng), F.random_element(rng))
