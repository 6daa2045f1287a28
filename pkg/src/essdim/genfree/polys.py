"""The affine group y -> c*y + b acting on monic polynomials through their roots.

Everything is decided on coefficients: ``(c, b)`` fixes ``f`` exactly when
``c**n * f((x - b) / c) == f(x)``, and the left side is expanded over GF(q)
without ever extracting roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..rootsys import DomainError
from .finite_field import GF, field


@dataclass(frozen=True)
class PolynomialSample:
    """Monic degree-n polynomial over GF(q) whose x^(n-1) coefficient vanishes.

    ``coefficients`` runs from the constant term up to the leading 1.
    """

    n: int
    q: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = self.coefficients
        if len(c) != self.n + 1 or c[-1] != 1:
            raise DomainError("expected a monic polynomial of degree n")
        if self.n >= 1 and c[-2] != 0:
            raise DomainError("the x^(n-1) coefficient must be zero")
        if any(not 0 <= a < self.q for a in c):
            raise DomainError("coefficient outside GF(q)")

    @classmethod
    def from_roots(cls, q: int, roots) -> "PolynomialSample":
        K = field(q)
        return cls(len(roots), q, tuple(K.poly_from_roots(roots)))

    @classmethod
    def monomial(cls, n: int, q: int) -> "PolynomialSample":
        return cls(n, q, (0,) * n + (1,))

    @property
    def field(self) -> GF:
        return field(self.q)


def substitute(K: GF, f, c: int, b: int) -> list[int]:
    """Coefficients of ``c**n * f((x - b) / c)`` for ``f`` of degree n (Horner in x - b)."""
    n = len(f) - 1
    nb = K.neg(b)
    h = [0]
    for i in range(n, -1, -1):
        shifted = [0] * (len(h) + 1)
        for j, a in enumerate(h):
            if a:
                shifted[j + 1] = K.add(shifted[j + 1], a)
                shifted[j] = K.add(shifted[j], K.mul(a, nb))
        shifted[0] = K.add(shifted[0], K.mul(f[i], K.pow(c, n - i)))
        h = shifted
    return h[: n + 1]


def fixes(K: GF, f, c: int, b: int) -> bool:
    return substitute(K, f, c, b) == list(f)


def agl1_stabilizer(f: PolynomialSample, allow_translations: bool) -> list[tuple[int, int]]:
    """All ``(c, b)`` fixing ``f``; ``b`` is pinned to 0 unless translations are allowed.

    For squarefree ``f`` the discriminant scales by ``c**(n(n-1))``, so only the
    ``c`` with that power equal to 1 are tried; other inputs get a full scan.
    """
    K = f.field
    n = f.n
    coeffs = list(f.coefficients)
    if K.is_squarefree(coeffs):
        cs = [c for c in K.units if K.pow(c, n * (n - 1)) == 1]
    else:
        cs = list(K.units)
    bs = K.elements if allow_translations else (0,)
    return [(c, b) for c in cs for b in bs if fixes(K, coeffs, c, b)]


def compose(K: GF, g, h) -> tuple[int, int]:
    """``g o h`` for affine maps ``y -> c*y + b`` stored as ``(c, b)``."""
    (c, b), (c2, b2) = g, h
    return K.mul(c, c2), K.add(K.mul(c, b2), b)


def sample_split(K: GF, n: int, rng: random.Random) -> PolynomialSample:
    """Random f in X0 with n distinct roots in GF(q)."""
    if n > K.q:
        raise DomainError(f"GF({K.q}) has fewer than {n} elements")
    for _ in range(10_000):
        roots = rng.sample(range(K.q), n - 1)
        s = 0
        for r in roots:
            s = K.add(s, r)
        last = K.neg(s)
        if last not in roots:
            return PolynomialSample.from_roots(K.q, roots + [last])
    raise DomainError(f"no {n} distinct elements of GF({K.q}) sum to zero")


def agl1_generic_check(n: int, q: int, samples: int, seed: int = 0, mode: str = "auto") -> dict:
    """Fraction of sampled split, squarefree f in X0 with trivial stabilizer.

    ``mode`` is ``"affine"`` (c and b free), ``"multiplicative"`` (b = 0) or
    ``"auto"``, which picks affine exactly when the characteristic divides n.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if n < 3:
        raise DomainError("degree must be at least 3")
    K = field(q)
    if mode == "auto":
        mode = "affine" if n % K.p == 0 else "multiplicative"
    if mode not in ("affine", "multiplicative"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    trivial = translated = 0
    for _ in range(samples):
        f = sample_split(K, n, rng)
        stab = agl1_stabilizer(f, allow_translations=mode == "affine")
        if len(stab) == 1:
            trivial += 1
        if any(c == 1 and b != 0 for c, b in stab):
            translated += 1
    return {
        "n": n,
        "q": q,
        "p": K.p,
        "mode": mode,
        "samples": samples,
        "seed": seed,
        "trivial": trivial,
        "fixed_by_translation": translated,
        "fraction_trivial": f"{trivial}/{samples}",
        "degenerate": n == 4 and K.p == 2,
    }
