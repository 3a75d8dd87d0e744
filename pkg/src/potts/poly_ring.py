"""Univariate polynomials over Z, Z[1/2] and finite fields.

Also provides cyclotomic polynomials, the half-trace polynomials psi_n and
chi_n, resultants, and splitting-field root finding.
"""

from __future__ import annotations

import functools
import random
from math import lcm
from typing import Callable, Iterable, Sequence

from .errors import (
    EvenN,
    EvenPrime,
    MixedFields,
    SizeCapExceeded,
    SplittingCapExceeded,
)
from .field_tower import SIZE_CAP, Field, FieldElem, embed, make_field, square_root

SPLITTING_CAP = 12


class Dyadic:
    """A rational number ``num / 2**exp``, kept canonical."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            num, exp = num << -exp, 0
        if num == 0:
            exp = 0
        while exp and num % 2 == 0:
            num //= 2
            exp -= 1
        self.num = num
        self.exp = exp

    @staticmethod
    def _lift(x) -> Dyadic:
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, int):
            return Dyadic(x)
        return NotImplemented

    def __add__(self, other):
        o = Dyadic._lift(other)
        if o is NotImplemented:
            return o
        e = max(self.exp, o.exp)
        return Dyadic((self.num << (e - self.exp)) + (o.num << (e - o.exp)), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        o = Dyadic._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = Dyadic._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = Dyadic._lift(other)
        if o is NotImplemented:
            return o
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    def inverse(self) -> Dyadic:
        n = abs(self.num)
        if n == 0 or n & (n - 1):
            raise ZeroDivisionError(f"{self} is not a unit of Z[1/2]")
        k = n.bit_length() - 1
        sign = 1 if self.num > 0 else -1
        return Dyadic(sign << self.exp, k)

    def __eq__(self, other):
        o = Dyadic._lift(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.exp == o.exp

    def __hash__(self):
        return hash((self.num, self.exp))

    def __bool__(self):
        return self.num != 0

    def __repr__(self):
        return str(self.num) if self.exp == 0 else f"{self.num}/2^{self.exp}"


class _IntegerRing:
    name = "ZZ"
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {x!r} into ZZ")

    def inverse(self, x: int) -> int:
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit of ZZ")

    def __repr__(self):
        return "ZZ"


class _DyadicRing:
    name = "DD"
    zero = Dyadic(0)
    one = Dyadic(1)

    def __call__(self, x):
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, int):
            return Dyadic(x)
        raise TypeError(f"cannot coerce {x!r} into Z[1/2]")

    def inverse(self, x: Dyadic) -> Dyadic:
        return x.inverse()

    def __repr__(self):
        return "DD"


ZZ = _IntegerRing()
DD = _DyadicRing()


def _ring_inverse(ring, c):
    if isinstance(ring, Field):
        return c.inverse()
    return ring.inverse(c)


class Poly:
    """Polynomial with little-endian coefficients over ``ring``.

    ``ring`` is ``ZZ``, ``DD`` or a :class:`Field`.  The zero polynomial has
    an empty coefficient list.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable, ring):
        cs = [ring(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.ring = ring

    @classmethod
    def x(cls, ring) -> Poly:
        return cls([0, 1], ring)

    @classmethod
    def const(cls, c, ring) -> Poly:
        return cls([c], ring)

    @classmethod
    def monomial(cls, c, k: int, ring) -> Poly:
        return cls([0] * k + [c], ring)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: Poly) -> None:
        if other.ring is not self.ring:
            raise MixedFields(f"polynomials over {self.ring!r} and {other.ring!r}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly([other], self.ring)

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring(other)
            return Poly([a * c for a in self.coeffs], self.ring)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly([], self.ring)
        out = [self.ring.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return Poly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        result = Poly([1], self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        inv = _ring_inverse(self.ring, other.lead)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([], self.ring), self
        quo = [self.ring.zero] * (dq + 1)
        d = other.degree
        oc = other.coeffs
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv
            if c:
                quo[k - d] = c
                for i in range(d + 1):
                    rem[k - d + i] = rem[k - d + i] - c * oc[i]
        return Poly(quo, self.ring), Poly(rem[:d], self.ring)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElem, Dyadic)):
            return self == Poly([other], self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((repr(self.ring), tuple(map(repr, self.coeffs))))

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a ring element or a polynomial."""
        acc = x * 0 if not isinstance(x, Poly) else Poly([], x.ring)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, g: Poly) -> Poly:
        acc = Poly([], g.ring)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self) -> Poly:
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:], self.ring)

    def monic(self) -> Poly:
        if not self:
            return self
        return self * _ring_inverse(self.ring, self.lead)

    def map_coeffs(self, fn: Callable, ring) -> Poly:
        return Poly([fn(c) for c in self.coeffs], ring)

    def powmod(self, e: int, mod: Poly) -> Poly:
        result = Poly([1], self.ring) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def to_json(self) -> list:
        out = []
        for c in self.coeffs:
            if isinstance(c, FieldElem):
                out.append(c.coeffs())
            else:
                out.append(repr(c))
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            cs = str(c)
            if mono and cs == "1":
                terms.append(mono)
            elif mono:
                terms.append(f"({cs})*{mono}" if not cs.lstrip("-").isdigit() else f"{cs}*{mono}")
            else:
                terms.append(cs)
        return " + ".join(terms)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two polynomials over a field."""
    f._check(g)
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def resultant(f: Poly, g: Poly):
    """Res(f, g) with the Sylvester convention (rows of f first).

    Equal to ``lead(f)**deg(g) * prod g(a)`` over the roots ``a`` of f, so
    ``Res(X - a, X - b) == a - b``.  Computed by the Euclidean scheme, which
    gives the same value as :func:`sylvester_resultant`.
    """
    f._check(g)
    if not f and not g:
        raise ValueError("resultant of two zero polynomials")
    ring = f.ring
    sign = ring.one
    acc = ring.one
    while True:
        df, dg = f.degree, g.degree
        if df < 0 or dg < 0:
            return ring.zero
        if df == 0:
            return sign * acc * f.lead**dg
        if dg == 0:
            return sign * acc * g.lead**df
        if dg < df:
            if (df * dg) % 2:
                sign = -sign
            f, g = g, f
            continue
        r = g % f
        if not r:
            return ring.zero
        acc = acc * f.lead ** (dg - r.degree)
        g = r


def sylvester_matrix(f: Poly, g: Poly) -> list[list]:
    m, n = f.degree, g.degree
    size = m + n
    zero = f.ring.zero
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def determinant(rows: list[list], field: Field):
    """Determinant over a field by Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return field.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            c = a[r][col] * inv
            if c:
                row, prow = a[r], a[col]
                for k in range(col, n):
                    row[k] = row[k] - c * prow[k]
    return det


def sylvester_resultant(f: Poly, g: Poly):
    """Determinant of the Sylvester matrix (f-rows first); reference oracle."""
    f._check(g)
    if f.degree <= 0 or g.degree <= 0:
        return resultant(f, g)
    return determinant(sylvester_matrix(f, g), f.ring)


# -- cyclotomic and half-trace polynomials ----------------------------------


@functools.lru_cache(maxsize=None)
def _phi_coeffs(n: int) -> tuple[int, ...]:
    f = Poly([-1] + [0] * (n - 1) + [1], ZZ)
    for d in range(1, n):
        if n % d == 0:
            f = f // Poly(_phi_coeffs(d), ZZ)
    return tuple(f.coeffs)


def cyclotomic_phi(n: int) -> Poly:
    """The n-th cyclotomic polynomial over ZZ."""
    if n < 1:
        raise ValueError("n must be positive")
    return Poly(_phi_coeffs(n), ZZ)


def _check_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise EvenN(f"n = {n} must be odd and at least 3")


def half_trace_psi(n: int) -> Poly:
    """psi_n with t^(phi(n)/2) * psi_n(t + 1/t) == Phi_n(t)."""
    _check_odd(n)
    phi = cyclotomic_phi(n)
    d = phi.degree // 2
    u = Poly.x(ZZ)
    # T_k(u) = t^k + t^-k
    ts = [Poly([2], ZZ), u]
    while len(ts) <= d:
        ts.append(u * ts[-1] - ts[-2])
    out = Poly([phi[d]], ZZ)
    for k in range(1, d + 1):
        out = out + ts[k] * phi[d + k]
    return out


def half_trace_chi(n: int) -> Poly:
    """chi_n(v) = 2^(-phi(n)/2) psi_n(2v), monic over Z[1/2]."""
    psi = half_trace_psi(n)
    d = psi.degree
    return Poly([Dyadic(c, d - i) for i, c in enumerate(psi.coeffs)], DD)


def reduce_mod_p(f: Poly, p: int) -> Poly:
    """Reduce an integer or dyadic polynomial into F_p[X]."""
    if p == 2:
        raise EvenPrime("2 is not invertible mod 2")
    F = make_field(p)
    inv2 = pow(2, -1, p)

    def red(c):
        if isinstance(c, Dyadic):
            return F(c.num * pow(inv2, c.exp, p))
        return F(c)

    return f.map_coeffs(red, F)


# -- splitting fields and roots ---------------------------------------------


def _frobenius_x(f: Poly, q: int, prev: Poly | None) -> Poly:
    """X^(q^(m+1)) mod f from X^(q^m) mod f."""
    base = Poly.x(f.ring) if prev is None else prev
    return base.powmod(q, f)


def splitting_degree(f: Poly, cap: int = SPLITTING_CAP) -> int:
    """Least m such that f splits over the degree-m extension of its field."""
    F = f.ring
    if not f:
        raise ValueError("zero polynomial")
    x = Poly.x(F)
    rest = f.monic()
    m = 1
    frob = None
    d = 0
    while rest.degree > 0:
        d += 1
        if d > cap:
            raise SplittingCapExceeded(f"no splitting within degree {cap}")
        frob = _frobenius_x(rest, F.q, frob % rest if frob is not None else None)
        g = poly_gcd(rest, frob - x)
        if g.degree > 0:
            m = lcm(m, d)
            if m > cap:
                raise SplittingCapExceeded(f"splitting degree {m} exceeds cap {cap}")
            while g.degree > 0:
                rest = rest // g
                g = poly_gcd(rest, g)
    return m


def _split_distinct(g: Poly, rng: random.Random) -> list[FieldElem]:
    """Roots of a squarefree polynomial that splits into linear factors."""
    F = g.ring
    if g.degree == 0:
        return []
    if g.degree == 1:
        g = g.monic()
        return [-g[0]]
    if g.degree == 2:
        g = g.monic()
        b, c = g[1], g[0]
        disc = b * b - 4 * c
        r = square_root(disc)
        if r is not None:
            half = F(2).inverse()
            return [(-b + r) * half, (-b - r) * half]
    e = (F.q - 1) // 2
    while True:
        a = F.random_element(rng)
        h = Poly([a, 1], F).powmod(e, g) - 1
        d = poly_gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_distinct(d, rng) + _split_distinct(g // d, rng)


@functools.lru_cache(maxsize=4096)
def _roots_cached(F: Field, codes: tuple[int, ...], cap: int, field_cap: int):
    f = Poly([FieldElem(F, c) for c in codes], F)
    m = splitting_degree(f, cap)
    try:
        E = make_field(F.p, F.s * m, field_cap)
    except SizeCapExceeded as exc:
        raise SplittingCapExceeded(str(exc)) from exc
    fe = f.map_coeffs(lambda c: embed(c, E), E).monic()
    rng = random.Random(0x5EED)
    x = Poly.x(E)
    frob = x.powmod(E.q, fe)
    distinct = poly_gcd(fe, frob - x)
    roots = _split_distinct(distinct, rng)
    out = []
    for r in roots:
        lin = Poly([-r, 1], E)
        rest = fe
        while True:
            quo, rem = divmod(rest, lin)
            if rem:
                break
            out.append(r)
            rest = quo
    out.sort(key=lambda r: r.v)
    return E, tuple(out)


def roots_over_splitting_field(f: Poly, cap: int = SPLITTING_CAP,
                               field_cap: int = SIZE_CAP) -> tuple[Field, list[FieldElem]]:
    """The splitting field of ``f`` and all its roots with multiplicity.

    ``cap`` bounds the extension degree over the coefficient field and
    ``field_cap`` the size of the splitting field.  Roots are returned sorted
    by the field's element order.
    """
    if not isinstance(f.ring, Field):
        raise TypeError("polynomial must be over a finite field")
    if not f:
        raise ValueError("zero polynomial")
    E, roots = _roots_cached(f.ring, tuple(c.v for c in f.coeffs), cap, field_cap)
    return E, list(roots)


def roots_in_field(f: Poly) -> list[FieldElem]:
    """Distinct roots of ``f`` lying in its coefficient field, sorted."""
    F = f.ring
    if f.degree <= 0:
        return []
    x = Poly.x(F)
    g = poly_gcd(f, x.powmod(F.q, f) - x)
    roots = _split_distinct(g, random.Random(0x5EED))
    return sorted(roots, key=lambda r: r.v)


def poly_over(F: Field, coeffs: Sequence) -> Poly:
    return Poly(coeffs, F)
