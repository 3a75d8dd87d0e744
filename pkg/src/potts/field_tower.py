"""Exact arithmetic in prime fields F_p and flat extensions F_{p^s}.

Extension fields are realized as F_p[g]/(m(g)) where ``m`` is the least monic
irreducible polynomial of degree ``s`` over F_p.  Polynomials are ordered by
their coefficient vectors read from the ``g^(s-1)`` coefficient down to the
constant term, which is the same as ordering by the integer ``sum c_i p^i``.
Field elements use the same order everywhere a "least" element is chosen.

Elements of an extension field are stored as packed integers: coefficient
``c_i`` occupies bits ``[i*w, (i+1)*w)`` for a per-field digit width ``w``.
Addition reduces all digits at once with a carry-free bit trick; small fields
additionally get log/antilog tables for multiplication.
"""

from __future__ import annotations

import functools
import random
from typing import Iterable, Iterator, Sequence

from .errors import (
    EvenCharacteristic,
    MixedFields,
    NoSuchRoot,
    NotPrime,
    SizeCapExceeded,
    ZeroElement,
)

SIZE_CAP = 1 << 20
TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@functools.lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as sorted ``(prime, exponent)`` pairs."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for r, e in factorize(n):
        divs = [d * r**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, s)`` with ``q == p**s`` or None if q is not a prime power."""
    fac = factorize(q) if q > 1 else ()
    if len(fac) != 1:
        return None
    return fac[0]


# -- polynomials over F_p as little-endian int lists (only what the modulus
#    search needs; general polynomial arithmetic lives in poly_ring) ---------


def _fp_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _fp_mod(f: list[int], m: list[int], p: int) -> list[int]:
    f = list(f)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for k in range(len(f) - 1, dm - 1, -1):
        c = f[k] * inv % p
        if c:
            for i in range(dm + 1):
                f[k - dm + i] = (f[k - dm + i] - c * m[i]) % p
    return _fp_trim(f[:dm])


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _fp_mod([c % p for c in prod], m, p)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_is_irreducible(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    s = len(m) - 1
    x = [0, 1]
    if _fp_powmod(x, p**s, m, p) != _fp_mod(x, m, p):
        return False
    for r, _ in factorize(s):
        h = _fp_powmod(x, p ** (s // r), m, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_fp_gcd(m, _fp_trim(h), p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, s: int) -> tuple[int, ...]:
    """The least monic irreducible polynomial of degree ``s`` over F_p."""
    if s == 1:
        return (0, 1)
    for index in range(p**s):
        low = [(index // p**i) % p for i in range(s)]
        if low[0] == 0:
            continue
        m = low + [1]
        if _fp_is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields ----------------------------------------------------------------


class Field:
    """A finite field F_q, q = p^s.  Instances are cached; compare with ``is``."""

    p: int
    s: int
    q: int
    modulus: tuple[int, ...]

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = modulus
        self.zero = FieldElem(self, 0)
        self.one = FieldElem(self, self._from_int(1))

    def __repr__(self) -> str:
        return f"F_{self.name}"

    @property
    def name(self) -> str:
        return str(self.p) if self.s == 1 else f"{self.p}^{self.s}"

    def __call__(self, x) -> FieldElem:
        if isinstance(x, FieldElem):
            if x.field is not self:
                raise MixedFields(f"{x.field!r} element used in {self!r}")
            return x
        if isinstance(x, int):
            return FieldElem(self, self._from_int(x))
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElem:
        if len(coeffs) > self.s:
            raise ValueError(f"too many coefficients for {self!r}")
        return FieldElem(self, self._from_coeffs([c % self.p for c in coeffs]))

    def from_index(self, index: int) -> FieldElem:
        return FieldElem(self, self._from_index(index))

    def elements(self) -> Iterator[FieldElem]:
        """All elements in the documented total order (zero first)."""
        for i in range(self.q):
            yield FieldElem(self, self._from_index(i))

    def nonzero_elements(self) -> Iterator[FieldElem]:
        for i in range(1, self.q):
            yield FieldElem(self, self._from_index(i))

    def random_element(self, rng: random.Random) -> FieldElem:
        return FieldElem(self, self._from_index(rng.randrange(self.q)))

    def random_nonzero(self, rng: random.Random) -> FieldElem:
        return FieldElem(self, self._from_index(rng.randrange(1, self.q)))

    @functools.cached_property
    def generator(self) -> FieldElem:
        """The least element of multiplicative order q - 1."""
        n = self.q - 1
        primes = [r for r, _ in factorize(n)] if n > 1 else []
        for i in range(1, self.q):
            v = self._from_index(i)
            if all(self._pow(v, n // r) != self._from_int(1) for r in primes):
                return FieldElem(self, v)
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover

    # raw-code primitives, overridden by subclasses
    def _from_int(self, n: int) -> int:
        raise NotImplementedError

    def _from_coeffs(self, coeffs: Sequence[int]) -> int:
        raise NotImplementedError

    def _coeffs(self, v: int) -> list[int]:
        raise NotImplementedError

    def _from_index(self, index: int) -> int:
        raise NotImplementedError

    def _index(self, v: int) -> int:
        raise NotImplementedError

    def _add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _neg(self, a: int) -> int:
        raise NotImplementedError

    def _mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _inv(self, a: int) -> int:
        raise NotImplementedError

    def _pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self._inv(a), -e
        result = self._from_int(1)
        while e:
            if e & 1:
                result = self._mul(result, a)
            e >>= 1
            if e:
                a = self._mul(a, a)
        return result


class PrimeField(Field):
    def __init__(self, p: int):
        super().__init__(p, 1, (0, 1))

    def _from_int(self, n):
        return n % self.p

    def _from_coeffs(self, coeffs):
        return coeffs[0] % self.p if coeffs else 0

    def _coeffs(self, v):
        return [v]

    def _from_index(self, index):
        return index

    def _index(self, v):
        return v

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        if a == 0:
            raise ZeroElement(f"inverse of 0 in {self!r}")
        return pow(a, -1, self.p)

    def _pow(self, a, e):
        if e < 0:
            a, e = self._inv(a), -e
        return pow(a, e, self.p)


class ExtensionField(Field):
    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        bound = s * (p - 1) ** 2 * (1 + (s - 1) * (p - 1)) + 2 * p
        w = bound.bit_length() + 1
        self._w = w
        self._dmask = (1 << w) - 1
        self._ones = sum(1 << (w * i) for i in range(s))
        self._top = self._ones << (w - 1)
        self._kadd = ((1 << (w - 1)) - p) * self._ones
        self._pones = p * self._ones
        self._lowmask = (1 << (w * s)) - 1
        self._exp: list[int] | None = None
        self._log: dict[int, int] | None = None
        self._tables_pending = p**s <= TABLE_LIMIT
        # packed g^(s+k) mod m for k = 0 .. s-2
        red = []
        cur = [(-c) % p for c in modulus[:s]]
        for _ in range(s - 1):
            red.append(self._pack(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            for i in range(s):
                cur[i] = (cur[i] - top * modulus[i]) % p
        self._red = red
        super().__init__(p, s, modulus)

    def _pack(self, coeffs):
        v = 0
        for i, c in enumerate(coeffs):
            v |= c << (self._w * i)
        return v

    def _from_int(self, n):
        return n % self.p

    def _from_coeffs(self, coeffs):
        return self._pack(coeffs)

    def _coeffs(self, v):
        w, mask = self._w, self._dmask
        return [(v >> (w * i)) & mask for i in range(self.s)]

    def _from_index(self, index):
        v, shift = 0, 0
        p = self.p
        while index:
            index, c = divmod(index, p)
            v |= c << shift
            shift += self._w
        return v

    def _index(self, v):
        p, out = self.p, 0
        for c in reversed(self._coeffs(v)):
            out = out * p + c
        return out

    def _reduce_digits(self, t):
        mask = ((t + self._kadd) & self._top) >> (self._w - 1)
        return t - mask * self.p

    def _add(self, a, b):
        return self._reduce_digits(a + b)

    def _sub(self, a, b):
        return self._reduce_digits(a + self._pones - b)

    def _neg(self, a):
        return self._reduce_digits(self._pones - a)

    def _mul_raw(self, a, b):
        w, mask, p = self._w, self._dmask, self.p
        prod = a * b
        low = prod & self._lowmask
        hi = prod >> (w * self.s)
        k = 0
        red = self._red
        while hi:
            c = hi & mask
            if c:
                low += c * red[k]
            hi >>= w
            k += 1
        out, shift = 0, 0
        for _ in range(self.s):
            out |= (((low >> shift) & mask) % p) << shift
            shift += w
        return out

    def _build_tables(self):
        self._tables_pending = False
        g = self.generator.v
        n = self.q - 1
        exp = [0] * (2 * n)
        log = {}
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_raw(x, g)
        exp[n:] = exp[:n]
        self._log = log
        self._exp = exp

    def _mul(self, a, b):
        exp = self._exp
        if exp is None:
            if not self._tables_pending:
                return self._mul_raw(a, b)
            self._build_tables()
            exp = self._exp
        if a == 0 or b == 0:
            return 0
        log = self._log
        return exp[log[a] + log[b]]

    def _inv(self, a):
        if a == 0:
            raise ZeroElement(f"inverse of 0 in {self!r}")
        if self._exp is None and self._tables_pending:
            self._build_tables()
        if self._exp is not None:
            return self._exp[self.q - 1 - self._log[a]]
        return self._pow(a, self.q - 2)

    def _pow(self, a, e):
        if self._exp is None and self._tables_pending:
            self._build_tables()
        if self._exp is not None:
            if a == 0:
                if e <= 0:
                    raise ZeroElement("0 to a non-positive power")
                return 0
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return super()._pow(a, e)


class FieldElem:
    """An element of a finite field; immutable and hashable."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v: int):
        self.field = field
        self.v = v

    def _code(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise MixedFields(f"{self.field!r} vs {other.field!r}")
            return other.v
        if isinstance(other, int):
            return self.field._from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._code(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._code(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._sub(self.v, o))

    def __rsub__(self, other):
        o = self._code(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._sub(o, self.v))

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.v))

    def __mul__(self, other):
        o = self._code(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._code(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(self.v, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._code(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(o, self.field._inv(self.v)))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field._pow(self.v, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field._inv(self.v))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == self.field._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.s, self.v))

    def __lt__(self, other: FieldElem) -> bool:
        return self.v < other.v

    def __bool__(self):
        return self.v != 0

    @property
    def index(self) -> int:
        """Position of the element in the field's total order."""
        return self.field._index(self.v)

    def coeffs(self) -> list[int]:
        """Little-endian coefficient vector over F_p (length s)."""
        return self.field._coeffs(self.v)

    def is_square(self) -> bool:
        if not self.v:
            return True
        return self.field._pow(self.v, (self.field.q - 1) // 2) == self.field._from_int(1)

    def __repr__(self):
        if self.field.s == 1:
            return str(self.v)
        return f"{self.coeffs()}"

    def __str__(self):
        if self.field.s == 1:
            return str(self.v)
        terms = []
        for i, c in enumerate(self.coeffs()):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def _build_field(p: int, s: int) -> Field:
    if s == 1:
        return PrimeField(p)
    return ExtensionField(p, s, least_irreducible(p, s))


def make_field(p: int, s: int = 1, cap: int = SIZE_CAP) -> Field:
    """Return the (cached) field F_{p^s}."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if s < 1:
        raise ValueError("extension degree must be positive")
    if p**s > cap:
        raise SizeCapExceeded(f"{p}^{s} exceeds the field size cap {cap}")
    return _build_field(p, s)


def parse_field_spec(spec: str | int, cap: int = SIZE_CAP) -> Field:
    """Parse ``"p^s"`` or a prime power ``"q"`` into a field."""
    text = str(spec).strip()
    if "^" in text:
        p_text, s_text = text.split("^", 1)
        return make_field(int(p_text), int(s_text), cap)
    q = int(text)
    pp = prime_power(q)
    if pp is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(pp[0], pp[1], cap)


def element_order(x: FieldElem) -> int:
    """Multiplicative order of a nonzero element, via the factorization of q-1."""
    if not x:
        raise ZeroElement("zero has no multiplicative order")
    F = x.field
    n = F.q - 1
    one = F._from_int(1)
    for r, e in factorize(n) if n > 1 else ():
        for _ in range(e):
            if F._pow(x.v, n // r) == one:
                n //= r
            else:
                break
    return n


def primitive_root_of_unity(F: Field, n: int) -> FieldElem:
    """``generator ** ((q-1)/n)``, an element of exact order n."""
    if n < 1 or (F.q - 1) % n:
        raise NoSuchRoot(f"{n} does not divide {F.q} - 1")
    return F.generator ** ((F.q - 1) // n)


def square_root(x: FieldElem) -> FieldElem | None:
    """The least square root of ``x`` (Tonelli-Shanks), or None for a non-residue."""
    F = x.field
    if not x:
        return F.zero
    if not x.is_square():
        return None
    m, e = F.q - 1, 0
    while m % 2 == 0:
        m //= 2
        e += 1
    z = F.generator ** m
    y = x ** ((m + 1) // 2)
    b = x**m
    r = e
    while b != 1:
        k, t = 0, b
        while t != 1:
            t = t * t
            k += 1
        c = z ** (1 << (r - k - 1))
        y = y * c
        z = c * c
        b = b * z
        r = k
    other = -y
    return y if y.v <= other.v else other


# -- embeddings between flat fields of the same characteristic -------------


@functools.lru_cache(maxsize=None)
def _generator_image(src: Field, dst: Field) -> FieldElem:
    """Least root in ``dst`` of the defining polynomial of ``src``."""
    h = dst.generator ** ((dst.q - 1) // (src.q - 1))
    roots = []
    z = dst.one
    for _ in range(src.q - 1):
        acc = dst.zero
        for c in reversed(src.modulus):
            acc = acc * z + c
        if not acc:
            roots.append(z)
        z = z * h
    return min(roots, key=lambda r: r.v)


def embed(x: FieldElem, dst: Field) -> FieldElem:
    """Map ``x`` into an extension ``dst`` of its field."""
    src = x.field
    if src is dst:
        return x
    if src.p != dst.p or dst.s % src.s:
        raise MixedFields(f"{src!r} does not embed into {dst!r}")
    if src.s == 1:
        return FieldElem(dst, dst._from_int(x.v))
    g = _generator_image(src, dst)
    acc = dst.zero
    for c in reversed(x.coeffs()):
        acc = acc * g + c
    return acc


def embed_all(xs: Iterable[FieldElem], dst: Field) -> list[FieldElem]:
    return [embed(x, dst) for x in xs]


def common_field(a: Field, b: Field) -> Field:
    """The smallest field containing both ``a`` and ``b``."""
    if a.p != b.p:
        raise MixedFields(f"{a!r} and {b!r} have different characteristics")
    from math import lcm

    return make_field(a.p, lcm(a.s, b.s))
