"""The half-trace rings Z[1/2][v]/chi_N(v) and their fibres mod p."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EvenPrime, MixedModulus, NoSuchRoot
from .field_tower import Field, FieldElem
from .poly_ring import DD, Dyadic, Poly, half_trace_chi, is_squarefree, reduce_mod_p, roots_in_field


class HalfTraceElem:
    """Residue class of a dyadic polynomial modulo chi_N."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence = ()):
        chi = half_trace_chi(N)
        r = Poly(coeffs, DD) % chi
        d = chi.degree
        self.N = N
        self.coeffs = tuple(r[i] for i in range(d))

    @classmethod
    def v(cls, N: int) -> HalfTraceElem:
        return cls(N, [0, 1])

    @classmethod
    def const(cls, N: int, c) -> HalfTraceElem:
        return cls(N, [c])

    def _other(self, other) -> HalfTraceElem:
        if isinstance(other, HalfTraceElem):
            if other.N != self.N:
                raise MixedModulus(f"chi_{self.N} vs chi_{other.N}")
            return other
        if isinstance(other, (int, Dyadic)):
            return HalfTraceElem(self.N, [other])
        return NotImplemented

    def poly(self) -> Poly:
        return Poly(self.coeffs, DD)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return HalfTraceElem(self.N, (self.poly() + o.poly()).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return HalfTraceElem(self.N, (-self.poly()).coeffs)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return HalfTraceElem(self.N, (self.poly() * o.poly()).coeffs)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> HalfTraceElem:
        result = HalfTraceElem(self.N, [1])
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def evaluate(self, value: FieldElem) -> FieldElem:
        """Image under the map v -> ``value`` into a field of odd characteristic."""
        F = value.field
        inv2 = F(2).inverse()
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = acc * value + F(c.num) * inv2**c.exp
        return acc

    def __repr__(self):
        return f"HalfTraceElem({self.N}, {list(self.coeffs)})"


@dataclass(frozen=True)
class FibreDescriptor:
    N: int
    p: int
    empty: bool
    components: int
    multiplicity: int
    reduced: bool

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "p": self.p,
            "empty": self.empty,
            "components": self.components,
            "multiplicity": self.multiplicity,
            "reduced": self.reduced,
        }


def fibre_mod_p(N: int, p: int) -> FibreDescriptor:
    """Geometric shape of Spec(R_N) over F_p."""
    if p == 2:
        raise EvenPrime("characteristic 2 is excluded")
    chi = half_trace_chi(N)
    d = chi.degree
    if N % p == 0 and N != p:
        return FibreDescriptor(N, p, True, 0, 0, True)
    chi_p = reduce_mod_p(chi, p)
    if N == p:
        F = chi_p.ring
        expected = Poly([-1, 1], F) ** ((p - 1) // 2)
        if chi_p != expected:
            raise AssertionError("chi_p is not a power of (v - 1) mod p")
        return FibreDescriptor(N, p, False, 1, (p - 1) // 2, False)
    if not is_squarefree(chi_p):
        raise AssertionError("chi_N is inseparable at a tame prime")
    return FibreDescriptor(N, p, False, d, 1, True)


def _require_roots(N: int, F: Field) -> None:
    if N < 1 or (F.q - 1) % N:
        raise NoSuchRoot(f"{F!r} has no primitive {N}-th root of unity")


def embed_half_trace(N: int, F: Field) -> list[FieldElem]:
    """All roots of chi_N in F, sorted; each is (zeta + 1/zeta)/2."""
    _require_roots(N, F)
    chi = reduce_mod_p(half_trace_chi(N), F.p)
    chi_F = Poly([F(c.v) for c in chi.coeffs], F)
    return roots_in_field(chi_F)


def half_traces_by_enumeration(N: int, F: Field) -> list[FieldElem]:
    """Oracle: (zeta + 1/zeta)/2 over all primitive N-th roots zeta in F."""
    _require_roots(N, F)
    from .field_tower import element_order

    inv2 = F(2).inverse()
    vals = {}
    for x in F.nonzero_elements():
        if element_order(x) == N:
            h = (x + x.inverse()) * inv2
            vals[h.v] = h
    return sorted(vals.values(), key=lambda e: e.v)
