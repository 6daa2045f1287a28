"""Irreducible reduced root systems in simple-root coordinates.

Simple roots are numbered as in Bourbaki's tables.  All coordinates are
integral: roots live in the root lattice with the simple roots as basis, and
the invariant form is stored as an integer Gram matrix scaled so that every
root has even norm.  Classical types additionally carry their usual embedding
into ``Z^n`` (``eps`` coordinates).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field

from .intlat import Matrix, freeze, inverse_rational, matmul, transpose

Vector = tuple[int, ...]

_FAMILIES = "ABCDEFG"


class DomainError(ValueError):
    """An input outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class DynkinType:
    """A Dynkin type such as ``E8``.

    ``C2`` is normalized to ``B2``; the label the caller used is kept in
    ``label`` but ignored for equality.
    """

    family: str
    rank: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        fam, n = self.family.upper(), int(self.rank)
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(fam, False)
        if not ok:
            raise DomainError(f"inadmissible Dynkin type {self.family}{self.rank}")
        label = self.label or f"{fam}{n}"
        if fam == "C" and n == 2:
            fam = "B"
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "label", label)

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise DomainError(f"cannot parse Dynkin type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"


def _gram(family: str, n: int) -> list[list[int]]:
    G = [[0] * n for _ in range(n)]

    def edge(i, j, v=-1):
        G[i][j] = G[j][i] = v

    for i in range(n):
        G[i][i] = 2
    if family in "ABC":
        for i in range(n - 1):
            edge(i, i + 1)
        if family == "B":
            G[n - 1][n - 1] = 1
        elif family == "C":
            G[n - 1][n - 1] = 4
            edge(n - 2, n - 1, -2)
    elif family == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
            if j < n:
                edge(i, j)
    elif family == "F":
        G = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif family == "G":
        G = [[2, -3], [-3, 6]]
    return G


def _ambient(family: str, n: int) -> Matrix | None:
    """Rows are the simple roots in eps coordinates (classical types only)."""
    if family == "A":
        rows = [[0] * (n + 1) for _ in range(n)]
        for i in range(n):
            rows[i][i], rows[i][i + 1] = 1, -1
        return freeze(rows)
    if family not in "BCD":
        return None
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i], rows[i][i + 1] = 1, -1
    if family == "B":
        rows[n - 1][n - 1] = 1
    elif family == "C":
        rows[n - 1][n - 1] = 2
    else:
        rows[n - 1] = [0] * n
        rows[n - 1][n - 2] = rows[n - 1][n - 1] = 1
    return freeze(rows)


class RootSystem:
    """Root system of one Dynkin type; immutable after construction.

    ``roots`` lists the positive roots by height followed by their negatives
    in the same order, so ``roots[k + N] == -roots[k]`` for ``N`` positive
    roots.  The first ``rank`` roots are the simple roots.
    """

    def __init__(self, dtype: DynkinType):
        self.type = dtype
        n = self.rank = dtype.rank
        self.gram: Matrix = freeze(_gram(dtype.family, n))
        G = self.gram
        for i in range(n):
            for j in range(n):
                if (2 * G[i][j]) % G[j][j]:
                    raise AssertionError("non-integral Cartan entry")
        # cartan[i][j] = <alpha_i, alpha_j^vee>
        self.cartan: Matrix = freeze(
            [[2 * G[i][j] // G[j][j] for j in range(n)] for i in range(n)]
        )
        self.ambient: Matrix | None = _ambient(dtype.family, n)
        self.simple_roots: tuple[Vector, ...] = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        self.roots: tuple[Vector, ...] = self._generate()
        self.index: dict[Vector, int] = {r: k for k, r in enumerate(self.roots)}
        self.n_positive = len(self.roots) // 2

    def __repr__(self):
        return f"RootSystem({self.type})"

    def _generate(self):
        seen = set(self.simple_roots)
        queue = list(self.simple_roots)
        while queue:
            x = queue.pop()
            for i in range(self.rank):
                y = self.reflect(i, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        pos = sorted(
            (r for r in seen if any(c > 0 for c in r)),
            key=lambda r: (sum(r), tuple(-c for c in r)),
        )
        return tuple(pos) + tuple(tuple(-c for c in r) for r in pos)

    # -- the invariant form -------------------------------------------------

    def inner(self, x, y) -> int:
        G = self.gram
        return sum(x[i] * G[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    def norm(self, x) -> int:
        return self.inner(x, x)

    def pairing(self, beta, alpha) -> int:
        """The Cartan integer ``<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)``."""
        if not any(alpha):
            raise DomainError("pairing against the zero vector")
        num, den = 2 * self.inner(beta, alpha), self.norm(alpha)
        if num % den:
            raise DomainError("pairing is not integral; is alpha a root?")
        return num // den

    def coroot_value(self, x, i: int) -> int:
        """``<x, alpha_i^vee>`` for a root-lattice vector ``x``."""
        return sum(x[k] * self.cartan[k][i] for k in range(self.rank))

    def reflect(self, i: int, x) -> Vector:
        c = self.coroot_value(x, i)
        if not c:
            return tuple(x)
        y = list(x)
        y[i] -= c
        return tuple(y)

    # -- root classification ------------------------------------------------

    @functools.cached_property
    def short_length(self) -> int:
        return min(self.norm(r) for r in self.simple_roots)

    def is_short(self, root) -> bool:
        return self.norm(root) == self.short_length

    def short_roots(self) -> list[Vector]:
        """The roots of minimal length (every root, for simply-laced types)."""
        return [r for r in self.roots if self.is_short(r)]

    def is_positive(self, x) -> bool:
        return any(c > 0 for c in x)

    def to_ambient(self, x) -> Vector:
        if self.ambient is None:
            raise DomainError(f"no eps embedding for type {self.type}")
        width = len(self.ambient[0])
        return tuple(sum(x[i] * self.ambient[i][k] for i in range(self.rank)) for k in range(width))

    def to_weight_coords(self, x) -> Vector:
        """Fundamental-weight coordinates of a root-lattice vector."""
        return tuple(self.coroot_value(x, j) for j in range(self.rank))

    @functools.cached_property
    def cartan_inverse_transpose(self):
        return inverse_rational(transpose(self.cartan))

    def weight_matrix(self, M) -> Matrix:
        """Conjugate a root-lattice matrix to the fundamental-weight basis."""
        Ct = transpose(self.cartan)
        P = matmul(matmul(Ct, M), self.cartan_inverse_transpose)
        if any(c.denominator != 1 for row in P for c in row):
            raise AssertionError("Weyl element is not integral on the weight lattice")
        return tuple(tuple(int(c) for c in row) for row in P)

    # -- the longest element ------------------------------------------------

    @functools.cached_property
    def longest_element_matrix(self) -> Matrix:
        """Matrix (columns = images of simple roots) of the longest Weyl element."""
        n = self.rank
        cols = [list(a) for a in self.simple_roots]  # cols[j] = w(alpha_j)
        while True:
            i = next((i for i in range(n) if self.is_positive(cols[i])), None)
            if i is None:
                break
            # w <- w s_i : w s_i (alpha_j) = w(alpha_j) - <alpha_j, alpha_i^vee> w(alpha_i)
            wi = cols[i]
            cols = [
                [cj - self.cartan[j][i] * a for cj, a in zip(cols[j], wi)]
                for j in range(n)
            ]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def has_minus_one(self) -> bool:
        n = self.rank
        w0 = self.longest_element_matrix
        return all(w0[i][j] == -int(i == j) for i in range(n) for j in range(n))

    def short_witness_triple(self) -> tuple[Vector, Vector, Vector]:
        """Two non-orthogonal short simple roots and minus their sum."""
        if self.rank < 2:
            raise DomainError("rank 1 has no pair of simple roots")
        short = [a for a in self.simple_roots if self.is_short(a)]
        for x in range(len(short)):
            for y in range(x + 1, len(short)):
                a, b = short[x], short[y]
                if self.inner(a, b):
                    c = tuple(-u - v for u, v in zip(a, b))
                    assert c in self.index and self.is_short(c)
                    return a, b, c
        raise DomainError(f"type {self.type} has no adjacent short simple roots")


@functools.lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    return RootSystem(DynkinType(family, rank))


def build(dtype) -> RootSystem:
    """Root system for a ``DynkinType`` or a string such as ``"F4"``."""
    if isinstance(dtype, str):
        dtype = DynkinType.parse(dtype)
    return _build(dtype.family, dtype.rank)


def expected_root_count(dtype: DynkinType) -> int:
    n = dtype.rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
        "F": 48,
        "G": 12,
    }[dtype.family]
