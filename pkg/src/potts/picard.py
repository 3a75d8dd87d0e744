"""Character data of the Picard groups.

Tame case: the pair (epsilon, k) in Z/2 x Z/2N recording how the
hyperelliptic involution and the rotation act on a line bundle, together with
the Hodge eigenbasis omega_i = x^(i-1) dx / y.

Wild case: the unit group of A = k[z]/z^m [X, 1/X], m = (p - 1)/2, realized
through truncated Laurent units with an explicit X-window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import NoSuchRoot, NotAUnit, WindowOverflow, WrongCharacteristic
from .field_tower import Field, FieldElem, is_prime, make_field, primitive_root_of_unity


@dataclass(frozen=True, order=True)
class CharacterPair:
    eps: int
    k: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "eps", self.eps % 2)
        object.__setattr__(self, "k", self.k % (2 * self.N))

    def __add__(self, other: CharacterPair) -> CharacterPair:
        if other.N != self.N:
            raise ValueError("characters for different N")
        return CharacterPair(self.eps + other.eps, self.k + other.k, self.N)

    def __neg__(self) -> CharacterPair:
        return CharacterPair(-self.eps, -self.k, self.N)

    def to_json(self) -> list[int]:
        return [self.eps, self.k]


@dataclass(frozen=True)
class HodgeReport:
    N: int
    field: Field
    phi: FieldElem
    tau_diagonal: tuple[FieldElem, ...]
    sigma_diagonal: tuple[FieldElem, ...]
    characters: tuple[CharacterPair, ...]
    top_wedge: int

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "field": self.field.name,
            "phi": self.phi.coeffs(),
            "characters": [c.to_json() for c in self.characters],
            "top_wedge": self.top_wedge,
        }


def default_hodge_field(N: int) -> Field:
    """The least prime field with a primitive 2N-th root of unity."""
    ell = 2 * N + 1
    while not is_prime(ell):
        ell += 2 * N
    return make_field(ell)


def _dlog(x: FieldElem, base: FieldElem, n: int) -> int:
    acc = x.field.one
    for k in range(n):
        if acc == x:
            return k
        acc = acc * base
    raise NoSuchRoot(f"{x!r} is not a power of {base!r}")


def hodge_characters(N: int, F: Optional[Field] = None) -> HodgeReport:
    """Action of tau and sigma_0 on omega_1, ..., omega_{N-1}.

    With zeta = -phi, sigma_0 multiplies omega_i by phi^i and tau by -1, so the
    i-th eigenline carries the character (1, i).  The generator of Z/2N is
    pinned by phi = g^((q-1)/2N) for the field's least generator g.
    """
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and at least 3")
    F = F or default_hodge_field(N)
    if F.p == 2 or (2 * N) % F.p == 0:
        raise WrongCharacteristic(f"characteristic {F.p} divides 2N")
    phi = primitive_root_of_unity(F, 2 * N)
    minus = -F.one
    tau = tuple(minus for _ in range(1, N))
    sigma = tuple(phi**i for i in range(1, N))
    chars = []
    for t, s in zip(tau, sigma):
        eps = 0 if t == F.one else 1
        chars.append(CharacterPair(eps, _dlog(s, phi, 2 * N), N))
    det = F.one
    for s in sigma:
        det = det * s
    if det == F.one:
        top = 1
    elif det == minus:
        top = -1
    else:
        raise AssertionError("top wedge scalar is not a sign")
    if top != (-1) ** ((N - 1) // 2):
        raise AssertionError("top wedge scalar differs from (-1)^((N-1)/2)")
    return HodgeReport(N, F, phi, tau, sigma, tuple(chars), top)


@dataclass(frozen=True)
class CharacterSubgroup:
    N: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_full(self) -> bool:
        return self.order == 4 * self.N

    def __contains__(self, c) -> bool:
        if isinstance(c, CharacterPair):
            return c in self.elements
        eps, k = c
        return CharacterPair(eps, k, self.N) in self.elements


def subgroup_generated(chars: Iterable, N: int) -> CharacterSubgroup:
    """Closure of ``chars`` inside Z/2 x Z/2N."""
    gens = [c if isinstance(c, CharacterPair) else CharacterPair(c[0], c[1], N) for c in chars]
    zero = CharacterPair(0, 0, N)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a + g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return CharacterSubgroup(N, frozenset(seen))


# -- truncated Laurent units ---------------------------------------------------


def _mul_layers(F: Field, m: int, a, b) -> list[dict]:
    out = [dict() for _ in range(m)]
    for i, li in enumerate(a):
        for j in range(m - i):
            target = out[i + j]
            for e1, c1 in li.items():
                for e2, c2 in b[j].items():
                    e = e1 + e2
                    target[e] = target.get(e, F.zero) + c1 * c2
    return out


class TruncLaurentUnit:
    """A unit of k[z]/z^m [X, 1/X]: its z^0 layer is a monomial c X^e.

    ``layers[j]`` maps X-exponents to the coefficient of z^j X^e.  Every
    exponent must lie in the window [lo, hi]; leaving it raises WindowOverflow
    (only z is truncated, never X).
    """

    __slots__ = ("field", "m", "window", "layers")

    def __init__(self, field: Field, m: int, window: tuple[int, int], layers):
        if m < 1:
            raise ValueError("m must be positive")
        lo, hi = window
        clean = []
        for j in range(m):
            layer = layers[j] if j < len(layers) else {}
            d = {}
            for e, c in layer.items():
                c = field(c)
                if not c:
                    continue
                if not lo <= e <= hi:
                    raise WindowOverflow(f"X^{e} outside [{lo}, {hi}]")
                d[e] = c
            clean.append(d)
        if len(clean[0]) != 1:
            raise NotAUnit("the z^0 layer is not a nonzero monomial")
        self.field = field
        self.m = m
        self.window = (lo, hi)
        self.layers = tuple(clean)

    @classmethod
    def one(cls, field: Field, m: int, window: tuple[int, int]) -> TruncLaurentUnit:
        return cls(field, m, window, [{0: field.one}])

    @classmethod
    def monomial(cls, field: Field, m: int, window, c, e: int) -> TruncLaurentUnit:
        return cls(field, m, window, [{e: c}])

    @classmethod
    def principal(cls, field: Field, m: int, window, a) -> TruncLaurentUnit:
        """1 + z a, with ``a`` a dict of X-coefficients or a list of such per z-degree."""
        if isinstance(a, dict):
            a = [a]
        layers = [{0: field.one}] + [dict(layer) for layer in a]
        return cls(field, m, window, layers[:m])

    def _check(self, other: TruncLaurentUnit) -> None:
        if (other.field, other.m, other.window) != (self.field, self.m, self.window):
            raise ValueError("incompatible truncated Laurent units")

    @property
    def monomial_part(self) -> tuple[FieldElem, int]:
        ((e, c),) = self.layers[0].items()
        return c, e

    def in_principal_part(self) -> bool:
        """True when the element lies in 1 + zA."""
        c, e = self.monomial_part
        return e == 0 and c == self.field.one

    def is_one(self) -> bool:
        return self.in_principal_part() and not any(self.layers[1:])

    def decompose(self) -> tuple[FieldElem, int, TruncLaurentUnit]:
        """(c, e, w) with self = c X^e w and w in 1 + zA."""
        c, e = self.monomial_part
        inv = c.inverse()
        layers = [{k - e: v * inv for k, v in layer.items()} for layer in self.layers]
        return c, e, TruncLaurentUnit(self.field, self.m, self.window, layers)

    def __mul__(self, other: TruncLaurentUnit) -> TruncLaurentUnit:
        self._check(other)
        return TruncLaurentUnit(self.field, self.m, self.window,
                                _mul_layers(self.field, self.m, self.layers, other.layers))

    def __pow__(self, n: int) -> TruncLaurentUnit:
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncLaurentUnit.one(self.field, self.m, self.window)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> TruncLaurentUnit:
        """Invert the monomial layer, then sum 1 - n + n^2 - ... for w = 1 + n."""
        c, e, w = self.decompose()
        F, m = self.field, self.m
        neg = [{}] + [{k: -v for k, v in layer.items()} for layer in w.layers[1:]]
        total = [{0: F.one}] + [{} for _ in range(m - 1)]
        term = [dict(layer) for layer in total]
        # n^m = 0, so the series stops after m - 1 steps
        for _ in range(1, m):
            term = _mul_layers(F, m, neg, term)
            for acc, layer in zip(total, term):
                for k, v in layer.items():
                    acc[k] = acc.get(k, F.zero) + v
        series = TruncLaurentUnit(F, m, self.window, total)
        return series * TruncLaurentUnit.monomial(F, m, self.window, c.inverse(), -e)

    def __eq__(self, other):
        if not isinstance(other, TruncLaurentUnit):
            return NotImplemented
        return (self.field is other.field and self.m == other.m
                and self.window == other.window and self.layers == other.layers)

    def __hash__(self):
        return hash((self.m, self.window,
                     tuple(tuple(sorted((e, c.v) for e, c in layer.items())) for layer in self.layers)))

    def to_json(self) -> list:
        return [[[e, layer[e].coeffs()] for e in sorted(layer)] for layer in self.layers]

    def __repr__(self):
        terms = []
        for j, layer in enumerate(self.layers):
            for e in sorted(layer):
                terms.append(f"{layer[e]!r}*z^{j}*X^{e}")
        return "TruncLaurentUnit(" + " + ".join(terms) + ")"


def random_principal_unit(F: Field, m: int, window, support: tuple[int, int],
                          rng: random.Random) -> TruncLaurentUnit:
    """1 + z a with a random, X-support inside ``support``."""
    lo, hi = support
    a = [{e: F.random_element(rng) for e in range(lo, hi + 1)} for _ in range(m - 1)]
    return TruncLaurentUnit.principal(F, m, window, a)


def random_unit(F: Field, m: int, window, support: tuple[int, int],
                rng: random.Random) -> TruncLaurentUnit:
    c = F.random_nonzero(rng)
    e = rng.randint(*support)
    return TruncLaurentUnit.monomial(F, m, window, c, e) * random_principal_unit(F, m, window, support, rng)


@dataclass(frozen=True)
class MuReport:
    n: int
    p: int
    description: str
    elements: Optional[tuple[int, ...]]
    samples: int
    verified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "description": self.description,
            "elements": list(self.elements) if self.elements is not None else None,
            "samples": self.samples,
            "verified": self.verified,
        }


def _solve_square_one(F: Field, m: int, window) -> list[TruncLaurentUnit]:
    """All u with u^2 = 1, solved layer by layer.

    Layer 0: (c X^e)^2 = 1 forces e = 0 and c = +-1.  Layer j >= 1:
    2 u_0 u_j + sum_{0<i<j} u_i u_{j-i} = 0 determines u_j, and since 2 is a
    unit every u_j vanishes by induction.
    """
    sols = []
    for c in F.nonzero_elements():
        if c * c != F.one:
            continue
        layers = [{0: c}]
        inv = (2 * c).inverse()
        for j in range(1, m):
            acc: dict = {}
            for i in range(1, j):
                for e1, c1 in layers[i].items():
                    for e2, c2 in layers[j - i].items():
                        acc[e1 + e2] = acc.get(e1 + e2, F.zero) + c1 * c2
            layers.append({e: -v * inv for e, v in acc.items() if v})
        sols.append(TruncLaurentUnit(F, m, window, layers))
    return sols


def mu_n_structure(p: int, F: Optional[Field] = None, window: tuple[int, int] = (-12, 12),
                   n: int = 2, samples: int = 500, seed: int = 0,
                   support: Optional[tuple[int, int]] = None) -> MuReport:
    """mu_n of k[z]/z^m [X, 1/X] for n in {2, p}, m = (p - 1)/2.

    Sampled units c X^e (1 + z a) draw e and the X-support of a from
    ``support``; by default it is the widest range whose n-th powers stay
    inside the window.
    """
    if not is_prime(p) or p == 2:
        raise WrongCharacteristic(f"{p} is not an odd prime")
    F = F or make_field(p)
    if F.p != p:
        raise WrongCharacteristic(f"field of characteristic {F.p}, expected {p}")
    m = (p - 1) // 2
    rng = random.Random(seed)
    if support is None:
        # u^n has X-degrees up to n*w from the monomial and (m-1)*w from z a
        w = min(-window[0], window[1]) // (n + m - 1)
        support = (-w, w)
    if n == 2:
        sols = _solve_square_one(F, m, window)
        ok = all((u * u).is_one() for u in sols)
        signs = []
        for u in sols:
            c, e = u.monomial_part
            ok = ok and e == 0 and not any(u.layers[1:])
            signs.append(1 if c == F.one else -1)
        ok = ok and sorted(signs) == [-1, 1]
        # random units other than +-1 never square to 1
        for _ in range(samples):
            u = random_unit(F, m, window, support, rng)
            if (u * u).is_one() != (u in sols):
                ok = False
        return MuReport(2, p, "{1, -1}", tuple(sorted(signs)), samples, ok)
    if n == p:
        ok = True
        for _ in range(samples):
            if not (random_principal_unit(F, m, window, support, rng) ** p).is_one():
                ok = False
        for i in range(samples):
            u = random_unit(F, m, window, support, rng)
            if i % 2:
                u = u.decompose()[2]
            if (u ** p).is_one() != u.in_principal_part():
                ok = False
        return MuReport(p, p, "1 + zA", None, 2 * samples, ok)
    raise ValueError("n must be 2 or p")


@dataclass(frozen=True)
class PicardDescriptor:
    variant: str
    N: int
    finite_part: tuple[int, ...]
    order: Optional[int]
    infinite_part: Optional[str] = None
    exponent: Optional[int] = None
    nilpotency: Optional[int] = None

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "N": self.N,
            "finite_part": list(self.finite_part),
            "order": self.order,
        }
        if self.infinite_part is not None:
            out["infinite_part"] = self.infinite_part
            out["exponent"] = self.exponent
            out["nilpotency"] = self.nilpotency
        return out


def picard_descriptor(variant: str, N: int, p: Optional[int] = None) -> PicardDescriptor:
    """Z/2 x Z/2N in the tame case, Z/2 x (1 + zA) in the wild case N = p."""
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and at least 3")
    if variant == "tame":
        if p is not None and (2 * N) % p == 0:
            raise WrongCharacteristic(f"p = {p} divides 2N")
        return PicardDescriptor("tame", N, (2, 2 * N), 4 * N)
    if variant == "wild":
        if p is None:
            p = N
        if p != N or not is_prime(p):
            raise WrongCharacteristic("wild curves need N = p prime")
        return PicardDescriptor("wild", N, (2,), None, "1 + zA", p, (p - 1) // 2)
    raise ValueError(f"unknown variant {variant!r}")
