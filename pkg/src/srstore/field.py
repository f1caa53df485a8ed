"""Exact arithmetic in prime-power Galois fields F_q.

Field elements are plain integers in [0, q).  For prime q the element is
its residue mod q.  For q = p^m the base-p digits of the integer, least
significant digit first, are the coefficients of a residue polynomial in
F_p[x]/(modulus): the integer e represents sum_i digit_i(e) * x^i.

The reducing modulus is not a free choice.  For each (p, m) the canonical
modulus is the monic irreducible polynomial of degree m whose coefficient
vector, read low-to-high as a base-p integer, is smallest.  Fixing the
modulus makes an integer-labelled element mean the same thing in every
run, so serialized schemes stay portable and bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, NotPrimePower

# Full multiplication/inverse lookup tables are built for fields up to
# this order; larger fields fall back to per-call polynomial arithmetic.
_TABLE_LIMIT = 512


def prime_power_split(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q = p**m and p prime, or None."""
    if q < 2:
        return None
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            return (p, m) if n == 1 else None
        p += 1
    return (n, 1)  # q itself is prime


def is_prime_power(q: int) -> bool:
    return prime_power_split(q) is not None


def next_prime_power(n: int) -> int:
    """Smallest prime power >= n (and >= 2)."""
    q = max(2, n)
    while not is_prime_power(q):
        q += 1
    return q


def _digits(t: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(t % p)
        t //= p
    return out


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num mod den over F_p; both low-to-high, den monic-led."""
    num = list(num)
    dd = len(den) - 1
    lead_inv = pow(den[-1], -1, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = (c * lead_inv) % p
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - f * den[j]) % p
    while len(num) > dd:
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def _poly_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for t in range(p**d):
            g = _digits(t, p, d) + [1]
            if not _poly_rem(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lowest-integer monic irreducible of degree m over F_p, low-to-high.

    For m = 1 this is the polynomial x, making F_p[x]/(x) = F_p.
    """
    if m == 1:
        return (0, 1)
    for t in range(p**m):
        cand = _digits(t, p, m) + [1]
        if _poly_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldConfig:
    """Defining data of F_q: order, characteristic, degree, modulus.

    modulus holds coefficients low-to-high (length m+1, leading 1).
    """

    q: int
    p: int
    m: int
    modulus: tuple[int, ...]


class Field:
    """Arithmetic in F_q with elements encoded as integers in [0, q)."""

    __slots__ = ("config", "q", "p", "m", "_mul_table", "_inv_table")

    def __init__(self, config: FieldConfig):
        self.config = config
        self.q = config.q
        self.p = config.p
        self.m = config.m
        self._mul_table = None
        self._inv_table = None
        if self.m > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction -------------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        mul = [[0] * q for _ in range(q)]
        inv = [0] * q
        for a in range(q):
            row = mul[a]
            for b in range(a, q):
                c = self._poly_mul(a, b)
                row[b] = c
                mul[b][a] = c
                if c == 1:
                    inv[a] = b
                    inv[b] = a
        self._mul_table = mul
        self._inv_table = inv

    def _to_digits(self, e: int) -> list[int]:
        return _digits(e, self.p, self.m)

    def _from_digits(self, digits: list[int]) -> int:
        e = 0
        for c in reversed(digits):
            e = e * self.p + c
        return e

    def _poly_mul(self, a: int, b: int) -> int:
        """Multiply via explicit polynomial arithmetic (no tables)."""
        p, m = self.p, self.m
        if p == 2:
            # carry-free binary multiply, then reduce
            prod = 0
            x = a
            while x:
                if x & 1:
                    prod ^= b
                x >>= 1
                b <<= 1
            mod_int = self._from_digits(list(self.config.modulus))
            top = prod.bit_length() - 1
            while top >= m:
                prod ^= mod_int << (top - m)
                top = prod.bit_length() - 1
            return prod
        da, db = self._to_digits(a), self._to_digits(b)
        prod = [0] * (2 * m - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        rem = _poly_rem(prod, list(self.config.modulus), p)
        rem += [0] * (m - len(rem))
        return self._from_digits(rem)

    # -- element ops --------------------------------------------------

    def check(self, e: int) -> int:
        if not isinstance(e, int) or not 0 <= e < self.q:
            raise ValueError(f"not an F_{self.q} element: {e!r}")
        return e

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        x, y, out, mult = a, b, 0, 1
        while x or y:
            out += ((x + y) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        x, out, mult = a, 0, 1
        while x:
            out += (-x % p) * mult
            x //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.q}")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    # -- plumbing -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.config == other.config

    def __hash__(self) -> int:
        return hash(self.config)

    def __repr__(self) -> str:
        return f"Field(q={self.q})"


@lru_cache(maxsize=None)
def field_new(q: int) -> Field:
    """The canonical F_q (cached); raises NotPrimePower for invalid q."""
    split = prime_power_split(q)
    if split is None:
        raise NotPrimePower(f"{q} is not a prime power >= 2")
    p, m = split
    return Field(FieldConfig(q=q, p=p, m=m, modulus=canonical_modulus(p, m)))
