"""Arithmetic in GF(q) and in GF(q)[x].

An element of GF(p^k) is an int in ``range(q)`` whose base-p digits are its
coefficients over GF(p) in a polynomial basis.  Multiplication goes through
discrete-log tables built from a primitive polynomial, so fields are meant to
stay small (q up to a few hundred thousand).
"""

from __future__ import annotations

import functools
import itertools

from ..rootsys import DomainError


def factor_prime_power(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q == p**k``, or DomainError."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise DomainError(f"{q} is not a prime power")
    return p, k


class GF:
    """The finite field with ``q`` elements."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.k = factor_prime_power(q)
        self.modulus = self._primitive_modulus()
        self.exp, self.log = self._tables()

    def __repr__(self):
        return f"GF({self.q})"

    # -- construction -------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _from_digits(self, digits) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def _times_x(self, a: int, modulus) -> int:
        """Multiply by the class of x modulo the monic ``modulus`` (low->high)."""
        d = [0] + self._digits(a)
        top = d.pop()
        return self._from_digits([(c - top * m) % self.p for c, m in zip(d, modulus)])

    def _primitive_modulus(self) -> list[int]:
        p, k = self.p, self.k
        if k == 1:
            g = next(g for g in range(1, p) if _multiplicative_order(g, p) == p - 1) if p > 2 else 1
            return [(-g) % p]
        for tail in itertools.product(range(p), repeat=k):
            if tail[0] == 0:
                continue
            a, n = 1, 0
            while True:
                a = self._times_x(a, tail)
                n += 1
                if a == 1 or n >= self.q - 1:
                    break
            if a == 1 and n == self.q - 1:
                return list(tail)
        raise AssertionError("no primitive polynomial found")

    def _tables(self):
        q = self.q
        exp = [0] * (2 * q)
        log = [0] * q
        a = 1
        for i in range(q - 1):
            exp[i] = a
            log[a] = i
            a = self._times_x(a, self.modulus) if self.k > 1 else (a * (-self.modulus[0])) % self.p
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        return exp, log

    # -- arithmetic ---------------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def units(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._from_digits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime field."""
        return n % self.p

    def generator(self) -> int:
        return self.exp[1]

    # -- polynomials (coefficient lists, lowest degree first) ---------------

    def poly_trim(self, f):
        f = list(f)
        while f and f[-1] == 0:
            f.pop()
        return f

    def poly_mul(self, f, g):
        if not f or not g:
            return []
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = self.add(out[i + j], self.mul(a, b))
        return self.poly_trim(out)

    def poly_from_roots(self, roots):
        f = [1]
        for r in roots:
            f = self.poly_mul(f, [self.neg(r), 1])
        return f

    def poly_derivative(self, f):
        return self.poly_trim([self.mul(self.from_int(i), f[i]) for i in range(1, len(f))])

    def poly_divmod(self, f, g):
        f, g = self.poly_trim(f), self.poly_trim(g)
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = self.inv(g[-1])
        quot = [0] * max(len(f) - len(g) + 1, 0)
        r = list(f)
        while len(r) >= len(g):
            c = self.mul(r[-1], inv_lead)
            shift = len(r) - len(g)
            quot[shift] = c
            for i, b in enumerate(g):
                r[shift + i] = self.sub(r[shift + i], self.mul(c, b))
            r = self.poly_trim(r)
        return quot, r

    def poly_gcd(self, f, g):
        f, g = self.poly_trim(f), self.poly_trim(g)
        while g:
            f, g = g, self.poly_divmod(f, g)[1]
        if f:
            c = self.inv(f[-1])
            f = [self.mul(c, a) for a in f]
        return f

    def is_squarefree(self, f) -> bool:
        """True iff ``f`` has no repeated root over the algebraic closure."""
        return len(self.poly_gcd(f, self.poly_derivative(f))) == 1


def _multiplicative_order(g: int, p: int) -> int:
    a, n = g % p, 1
    while a != 1:
        a = a * g % p
        n += 1
    return n


@functools.lru_cache(maxsize=32)
def field(q: int) -> GF:
    return GF(q)
