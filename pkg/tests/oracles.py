"""Independent mini-implementations used to cross-check the package.

Everything here is deliberately written from scratch with different
algorithms and different representations than the package under test,
so an agreement between the two is meaningful.  Keep this module free
of srstore imports.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p


# -- GF(8) built by bit twiddling with modulus x^3 + x + 1 ------------

def gf8_tables() -> tuple[list[list[int]], list[int]]:
    """(mul_table, inv_table) for F_8, elements as 3-bit ints."""

    def mul(a: int, b: int) -> int:
        prod = 0
        while a:
            if a & 1:
                prod ^= b
            a >>= 1
            b <<= 1
        for shift in (4, 3, 2, 1, 0):
            if prod >> (shift + 3) & 1:
                prod ^= 0b1011 << shift
        return prod

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    inv = [0] * 8
    for a in range(1, 8):
        for b in range(1, 8):
            if table[a][b] == 1:
                inv[a] = b
    return table, inv


# -- prime-field helpers ----------------------------------------------

def inv_mod_prime(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank over F_p by straightforward Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next(
            (i for i in range(rank, len(rows)) if rows[i][col] % p), None
        )
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        f = inv_mod_prime(rows[rank][col] % p, p)
        rows[rank] = [(x * f) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col] % p
                rows[i] = [
                    (x - c * y) % p for x, y in zip(rows[i], rows[rank])
                ]
        rank += 1
    return rank


def matmul_mod_p(a: list[list[int]], b: list[list[int]], p: int):
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(r) == k for r in a)
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)]
        for i in range(n)
    ]


# -- irreducibility over F_p via sympy --------------------------------

def poly_irreducible_sympy(coeffs_low_to_high: list[int], p: int) -> bool:
    desc = [ZZ(c) for c in reversed(coeffs_low_to_high)]
    return bool(gf_irreducible_p(desc, p, ZZ))


# -- exact entropy of a linear image by full enumeration --------------

def naive_image_entropy(
    field_mul,
    field_add,
    q: int,
    matrix: list[list[int]],
    cols: list[int],
) -> Fraction:
    """H(selected coords of x·M) for uniform x, in q-ary units, exact.

    matrix is D x W over F_q (row-vector convention); cols selects output
    coordinates.  Enumerates all q**D inputs, so keep D tiny.
    """
    d = len(matrix)
    counts: dict[tuple[int, ...], int] = {}
    for x in product(range(q), repeat=d):
        y = []
        for j in cols:
            acc = 0
            for i in range(d):
                acc = field_add(acc, field_mul(x[i], matrix[i][j]))
            y.append(acc)
        key = tuple(y)
        counts[key] = counts.get(key, 0) + 1

    def log_q(n: int) -> int:
        e = 0
        while n > 1:
            assert n % q == 0, "count not a power of q"
            n //= q
            e += 1
        return e

    total = q**d
    h = Fraction(d)
    for c in counts.values():
        h -= Fraction(c * log_q(c), total)
    return h
