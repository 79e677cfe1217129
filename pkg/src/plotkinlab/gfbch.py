"""GF(2^m) tables and narrow-sense BCH codes, extended by an overall parity bit.

Polynomials over GF(2) are packed integers: bit i is the coefficient of x^i.
"""

from __future__ import annotations

from .bincode import CodeError, LinearCode

PRIMITIVE = {2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011}


class GaloisField:
    def __init__(self, m: int, prim_poly: int | None = None):
        if prim_poly is None:
            prim_poly = PRIMITIVE[m]
        self.m = m
        self.prim_poly = prim_poly
        self.order = (1 << m) - 1
        self.exp = [0] * (2 * self.order)
        self.log = [None] * (1 << m)
        a = 1
        for i in range(self.order):
            if self.log[a] is not None:
                raise ValueError(f"polynomial {prim_poly:#b} is not primitive")
            self.exp[i] = self.exp[i + self.order] = a
            self.log[a] = i
            a <<= 1
            if a >> m:
                a ^= prim_poly
        if a != 1:
            raise ValueError(f"polynomial {prim_poly:#b} is not primitive")

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def alpha_pow(self, i: int) -> int:
        return self.exp[i % self.order]

    def cyclotomic_coset(self, i: int) -> list[int]:
        coset, j = [], i % self.order
        while j not in coset:
            coset.append(j)
            j = (2 * j) % self.order
        return coset

    def minimal_polynomial(self, i: int) -> int:
        """Minimal polynomial of alpha^i as a packed GF(2) polynomial."""
        poly = [1]  # coefficients in GF(2^m), lowest degree first
        for j in self.cyclotomic_coset(i):
            root = self.alpha_pow(j)
            nxt = [0] * (len(poly) + 1)
            for d, c in enumerate(poly):
                nxt[d + 1] ^= c
                nxt[d] ^= self.mul(c, root)
            poly = nxt
        if any(c not in (0, 1) for c in poly):
            raise AssertionError("minimal polynomial not binary")
        return sum(c << d for d, c in enumerate(poly))


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def bch_generator(field: GaloisField, designed_d: int) -> int:
    """lcm of the minimal polynomials of alpha^1 .. alpha^(designed_d - 1)."""
    if not 1 <= designed_d <= field.order:
        raise CodeError(f"designed distance {designed_d} out of range")
    g, used = 1, set()
    for i in range(1, designed_d):
        rep = min(field.cyclotomic_coset(i))
        if rep in used:
            continue
        used.add(rep)
        g = poly_mul(g, field.minimal_polynomial(rep))
    return g


def bch_code(m: int, designed_d: int, field: GaloisField | None = None) -> LinearCode:
    field = field or GaloisField(m)
    n = field.order
    g = bch_generator(field, designed_d)
    k = n - (g.bit_length() - 1)
    return LinearCode([g << i for i in range(k)], n, None, f"BCH({n},{k})")


def extended_bch(m: int, designed_d: int) -> LinearCode:
    """Narrow-sense BCH code of length 2^m - 1 with an overall parity bit appended last."""
    base = bch_code(m, designed_d)
    n = base.n
    rows = [r | ((r.bit_count() & 1) << n) for r in base.rows]
    return LinearCode(rows, n + 1, None, f"eBCH({n + 1},{base.k})")
