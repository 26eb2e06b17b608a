"""Exact coefficient fields: GF(p), GF(p^e) and Q.

Elements are lightweight wrappers with operator overloading so geometry code
can be written the obvious way.  Raws are canonical: ints in [0, p) for prime
fields, coefficient tuples of length e for extensions, Fraction for Q.

Extension fields are built on a fixed modulus: the minimal monic irreducible
of degree e over F_p, "minimal" meaning smallest when the non-leading
coefficients are read as a base-p integer with the constant term least
significant.  That makes every GF(p^e) here reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterator


class FieldElement:
    __slots__ = ("field", "raw")

    def __init__(self, field: "Field", raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field} vs {other.field}")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other).raw
        return None

    def __add__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.raw, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.raw, r))

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(r, self.raw))

    def __mul__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.raw, r))

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.raw, self.field._inv(r)))

    def __rtruediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(r, self.field._inv(self.raw)))

    def __neg__(self):
        return FieldElement(self.field, self.field._sub(self.field._zero, self.raw))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = base.inverse()
            n = -n
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.raw))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.field.from_int(other).raw
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return self.raw != self.field._zero

    def __repr__(self):
        return f"{self.raw!r} in {self.field}"

    def to_json(self):
        return self.field.raw_to_json(self.raw)


class Field:
    """Common interface; see PrimeField, ExtensionField, RationalField."""

    char: int
    order: int | None  # None means infinite

    _zero = None  # canonical raw zero, set by subclasses

    def zero(self) -> FieldElement:
        return FieldElement(self, self._zero)

    def one(self) -> FieldElement:
        return self.from_int(1)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.element(value)

    def element(self, raw) -> FieldElement:
        raise NotImplementedError

    def from_int(self, n: int) -> FieldElement:
        raise NotImplementedError

    def elements(self) -> Iterator[FieldElement]:
        raise NotImplementedError

    def random_element(self, rng) -> FieldElement:
        raise NotImplementedError

    def raw_to_json(self, raw):
        raise NotImplementedError

    def element_from_json(self, data) -> FieldElement:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


class PrimeField(Field):
    def __init__(self, p: int):
        from sympy import isprime

        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self._zero = 0

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def element(self, raw) -> FieldElement:
        return FieldElement(self, int(raw) % self.p)

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, n % self.p)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(self, i) for i in range(self.p))

    def random_element(self, rng) -> FieldElement:
        return FieldElement(self, rng.randrange(self.p))

    def raw_to_json(self, raw):
        return str(raw)

    def element_from_json(self, data) -> FieldElement:
        return FieldElement(self, int(data) % self.p)

    def descriptor(self) -> dict:
        return {"p": self.p, "e": 1}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField(Field):
    char = 0
    order = None
    _zero = Fraction(0)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def element(self, raw) -> FieldElement:
        return FieldElement(self, Fraction(raw))

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, Fraction(n))

    def random_element(self, rng) -> FieldElement:
        return FieldElement(self, Fraction(rng.randint(-20, 20), rng.randint(1, 12)))

    def raw_to_json(self, raw: Fraction):
        return str(raw)  # "a" or "a/b"

    def element_from_json(self, data) -> FieldElement:
        return FieldElement(self, Fraction(str(data)))

    def descriptor(self) -> dict:
        return {"rational": True}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class ExtensionField(Field):
    """GF(p^e) as F_p[x] modulo a fixed irreducible.  Raw elements are
    coefficient tuples of length e, constant term first."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None = None):
        from sympy import isprime

        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if e < 2:
            raise ValueError("use PrimeField for e = 1")
        if e > 12:
            raise ValueError("extension degree capped at 12")
        self.p = p
        self.e = e
        self.char = p
        self.order = p**e
        if modulus is None:
            modulus = smallest_irreducible(p, e)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_irreducible_modp(list(modulus), p):
            raise ValueError("modulus is not irreducible")
        self.modulus = tuple(c % p for c in modulus[:-1])  # non-leading part
        self._zero = (0,) * e

    def gen(self) -> FieldElement:
        """The residue of x."""
        raw = [0] * self.e
        raw[1 % self.e] = 1
        return FieldElement(self, tuple(raw))

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _mul(self, a, b):
        p, e = self.p, self.e
        conv = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        # reduce x^k = -modulus_tail * x^(k-e) for k >= e
        for k in range(2 * e - 2, e - 1, -1):
            c = conv[k] % p
            if c:
                base = k - e
                for j, mj in enumerate(self.modulus):
                    conv[base + j] -= c * mj
            conv[k] = 0
        return tuple(c % p for c in conv[:e])

    def _inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        f = list(self.modulus) + [1]
        inv = _modp_poly_invert(list(a), f, p)
        inv = inv + [0] * (self.e - len(inv))
        return tuple(c % p for c in inv[: self.e])

    def element(self, raw) -> FieldElement:
        cs = [int(c) % self.p for c in raw]
        if len(cs) > self.e:
            raise ValueError("coefficient list longer than the degree")
        cs += [0] * (self.e - len(cs))
        return FieldElement(self, tuple(cs))

    def from_int(self, n: int) -> FieldElement:
        raw = [n % self.p] + [0] * (self.e - 1)
        return FieldElement(self, tuple(raw))

    def elements(self) -> Iterator[FieldElement]:
        if self.order > 1 << 20:
            raise ValueError(f"refusing to enumerate GF({self.p}^{self.e})")
        for combo in itertools.product(range(self.p), repeat=self.e):
            yield FieldElement(self, combo)

    def random_element(self, rng) -> FieldElement:
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.e)))

    def raw_to_json(self, raw):
        return [str(c) for c in raw]

    def element_from_json(self, data) -> FieldElement:
        if isinstance(data, str):
            return self.from_int(int(data))
        return self.element([int(c) for c in data])

    def descriptor(self) -> dict:
        return {"p": self.p, "e": self.e}

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.e == self.e
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


def field_from_descriptor(desc: dict) -> Field:
    if desc.get("rational"):
        return QQ
    p = int(desc["p"])
    e = int(desc.get("e", 1))
    return PrimeField(p) if e == 1 else ExtensionField(p, e)


def galois_field(p: int, e: int = 1) -> Field:
    return PrimeField(p) if e == 1 else ExtensionField(p, e)


# ---------------------------------------------------------------------------
# irreducible modulus selection: plain int-list polynomials over F_p


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e over F_p with the smallest non-leading
    part in the base-p encoding (constant digit least significant).
    Returns ascending coefficients, length e + 1."""
    for code in range(p**e):
        tail = []
        c = code
        for _ in range(e):
            tail.append(c % p)
            c //= p
        f = tail + [1]
        if _is_irreducible_modp(f, p):
            return tuple(f)
    raise AssertionError("no irreducible found, which cannot happen")


def _modp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _modp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = [c % p for c in a]
    b = _modp_trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    r = a[:]
    _modp_trim(r)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        factor = (r[-1] * inv_lead) % p
        q[shift] = factor
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - factor * bc) % p
        _modp_trim(r)
    return _modp_trim(q), r


def _modp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    conv = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                conv[i + j] = (conv[i + j] + x * y) % p
    _, r = _modp_divmod(conv, f, p)
    return r


def _modp_powmod(a: list[int], n: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _modp_divmod(a, f, p)[1]
    while n:
        if n & 1:
            result = _modp_mulmod(result, base, f, p)
        base = _modp_mulmod(base, base, f, p)
        n >>= 1
    return result


def _modp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _modp_trim([c % p for c in a])
    b = _modp_trim([c % p for c in b])
    while b:
        _, r = _modp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _modp_poly_invert(a: list[int], f: list[int], p: int) -> list[int]:
    """Inverse of a modulo f over F_p by the extended euclidean algorithm."""
    r0, r1 = f[:], _modp_trim([c % p for c in a])
    t0, t1 = [0], [1]
    while _modp_trim(r1[:]):
        q, r = _modp_divmod(r0, r1, p)
        r0, r1 = r1, r
        qt = _modp_mul(q, t1, p)
        t0, t1 = t1, _modp_sub(t0, qt, p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
    inv = pow(r0[0], -1, p)
    return [(c * inv) % p for c in t0]


def _modp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    conv = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                conv[i + j] = (conv[i + j] + x * y) % p
    return _modp_trim(conv)


def _modp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _modp_trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible_modp(f: list[int], p: int) -> bool:
    f = [c % p for c in f]
    e = len(f) - 1
    if e < 1 or f[-1] != 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    # x^(p^e) == x mod f
    u = x[:]
    for _ in range(e):
        u = _modp_powmod(u, p, f, p)
    if _modp_trim(_modp_sub(u, x, p)):
        return False
    # gcd(x^(p^(e/r)) - x, f) == 1 for every prime r | e
    for r in _prime_factors(e):
        u = x[:]
        for _ in range(e // r):
            u = _modp_powmod(u, p, f, p)
        g = _modp_gcd(_modp_sub(u, x, p), f, p)
        if len(g) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
