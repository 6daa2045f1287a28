"""Weyl groups: elements, orbits, enumeration, orders, and mod-p kernels.

A Weyl element is stored as the permutation it induces on the root list of
its :class:`~essdim.rootsys.RootSystem` (faithful, since the roots span).
The integer matrix on the root-lattice basis is derived on demand.  Orders
and pointwise stabilizers come from :mod:`essdim.permgroup`.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .permgroup import StabilizerChain
from .rootsys import DomainError, RootSystem, Vector

log = logging.getLogger(__name__)

_PAD = bytes(range(256))


def pack(images) -> bytes | tuple[int, ...]:
    """Compact permutation storage: bytes when every image fits, else a tuple."""
    images = [int(i) for i in images]
    return bytes(images) if len(images) <= 256 else tuple(images)
DEFAULT_LIMIT = int(os.environ.get("ESSDIM_ENUM_LIMIT", 10**7))


class Refusal(RuntimeError):
    """A computation declined because it is infeasible as configured."""

    def __init__(self, message: str, alternatives=(), order: int | None = None):
        super().__init__(message)
        self.alternatives = list(alternatives)
        self.order = order


@dataclass(frozen=True, slots=True)
class WeylElement:
    """Element of ``<W, -1>`` acting on the roots of ``rs``.

    ``perm[k]`` is the index of the image of ``rs.roots[k]``.  Products follow
    function composition: ``(a * b)(x) == a(b(x))``.
    """

    rs: RootSystem = field(repr=False, compare=False)
    perm: bytes | tuple[int, ...]
    word: tuple[int, ...] | None = field(default=None, compare=False)
    _matrix: tuple | None = field(default=None, init=False, repr=False, compare=False)

    @classmethod
    def from_matrix(cls, rs: RootSystem, M, word=None) -> "WeylElement":
        n = rs.rank
        images = []
        for r in rs.roots:
            img = tuple(sum(M[i][j] * r[j] for j in range(n)) for i in range(n))
            try:
                images.append(rs.index[img])
            except KeyError:
                raise DomainError("matrix does not preserve the root system") from None
        return cls(rs, pack(images), word)

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Action on the root lattice; column j is the image of simple root j."""
        if self._matrix is None:
            n = self.rs.rank
            cols = [self.rs.roots[self.perm[j]] for j in range(n)]
            object.__setattr__(self, "_matrix", tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))
        return self._matrix

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        if isinstance(self.perm, bytes):
            return WeylElement(self.rs, other.perm.translate(self.perm + _PAD[len(self.perm):]), word)
        return WeylElement(self.rs, tuple(self.perm[i] for i in other.perm), word)

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        word = None if self.word is None else self.word[::-1]
        return WeylElement(self.rs, pack(inv), word)

    def is_identity(self) -> bool:
        if isinstance(self.perm, bytes):
            return self.perm == _PAD[: len(self.perm)]
        return all(i == j for i, j in enumerate(self.perm))

    def order(self) -> int:
        k, g = 1, self
        while not g.is_identity():
            g, k = g * self, k + 1
        return k

    def apply(self, x) -> Vector:
        M = self.matrix
        return tuple(sum(M[i][j] * x[j] for j in range(len(x))) for i in range(len(x)))

    def apply_root(self, k: int) -> int:
        return self.perm[k]

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced expression in the simple reflections (1-based indices).

        Only meaningful for elements of W; ``-1`` outside W raises.
        """
        N = self.rs.n_positive
        simple = simple_reflections(self.rs)
        g, word = self, []
        while not g.is_identity():
            i = next((i for i in range(self.rs.rank) if g.perm[i] >= N), None)
            if i is None or len(word) > N:
                raise DomainError("element is not in the Weyl group")
            g = g * simple[i]
            word.append(i + 1)
        return tuple(reversed(word))

    def as_array(self) -> np.ndarray:
        if isinstance(self.perm, bytes):
            return np.frombuffer(self.perm, dtype=np.uint8).astype(np.int32)
        return np.asarray(self.perm, dtype=np.int32)

    @classmethod
    def from_array(cls, rs: RootSystem, arr) -> "WeylElement":
        return cls(rs, pack(arr))


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, pack(range(len(rs.roots))), ())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """The reflection in the simple root ``alpha_i``; ``i`` is 1-based."""
    if not 1 <= i <= rs.rank:
        raise IndexError(f"simple root index {i} out of range 1..{rs.rank}")
    images = pack(rs.index[rs.reflect(i - 1, r)] for r in rs.roots)
    return WeylElement(rs, images, (i,))


def simple_reflections(rs: RootSystem) -> list[WeylElement]:
    return [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]


def minus_one(rs: RootSystem) -> WeylElement:
    """``-1`` as an element of ``<W, -1>`` (in ``W`` iff ``rs.has_minus_one()``)."""
    N = rs.n_positive
    return WeylElement(rs, pack((k + N) % (2 * N) for k in range(2 * N)))


def longest_element(rs: RootSystem) -> WeylElement:
    return WeylElement.from_matrix(rs, rs.longest_element_matrix)


def from_word(rs: RootSystem, word) -> WeylElement:
    g = identity(rs)
    for i in word:
        g = g * simple_reflection(rs, i)
    return g


def orbit(rs: RootSystem, start) -> set[Vector]:
    """W-orbit of a root-lattice vector, by closure under simple reflections."""
    start = tuple(start)
    seen = {start}
    queue = [start]
    while queue:
        x = queue.pop()
        for i in range(rs.rank):
            y = rs.reflect(i, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def weight_orbit(rs: RootSystem, weight) -> list[Vector]:
    """W-orbit of a weight given in fundamental-weight coordinates."""
    C = rs.cartan
    n = rs.rank
    start = tuple(weight)
    seen = {start}
    queue = [start]
    for lam in queue:
        for i in range(n):
            c = lam[i]
            if c:
                mu = tuple(lam[j] - c * C[i][j] for j in range(n))
                if mu not in seen:
                    seen.add(mu)
                    queue.append(mu)
    return sorted(seen, reverse=True)


@dataclass
class GroupHandle:
    """A subgroup of ``<W, -1>`` together with a verified stabilizer chain.

    ``domain`` names the set the chain acts on: ``"roots"`` (root indices) or
    ``"roots+mod-p"`` (root indices followed by residue classes of roots
    modulo p).  ``generators`` are always returned as root permutations.
    """

    rs: RootSystem
    generators: list[WeylElement]
    domain: str = "roots"
    chain: StabilizerChain | None = field(default=None, repr=False)
    order: int | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.chain is None:
            degree = len(self.rs.roots)
            self.chain = StabilizerChain([g.as_array() for g in self.generators], degree)
        if self.order is None:
            self.order = self.chain.order

    def contains(self, g: WeylElement) -> bool:
        if self.domain != "roots":
            raise NotImplementedError("membership is only defined on the root domain")
        return self.chain.contains(g.as_array())

    @property
    def elementary_abelian_2(self) -> bool:
        gens = self.generators
        if any(not (g * g).is_identity() for g in gens):
            return False
        return all((a * b) == (b * a) for a in gens for b in gens)

    @property
    def structure(self) -> str:
        if self.order == 1:
            return "trivial"
        if self.elementary_abelian_2:
            k = self.order.bit_length() - 1
            return "Z/2" if k == 1 else f"(Z/2)^{k}"
        return f"order {self.order}"


def weyl_group(rs: RootSystem, include_minus_one: bool = False) -> GroupHandle:
    gens = simple_reflections(rs)
    if include_minus_one and not rs.has_minus_one():
        gens.append(minus_one(rs))
    handle = GroupHandle(rs, gens)
    handle.info["include_minus_one"] = include_minus_one
    return handle


def order(group: GroupHandle | RootSystem) -> int:
    """Exact order from the stabilizer chain."""
    if isinstance(group, RootSystem):
        group = weyl_group(group)
    return group.order


def closed_form_order(rs: RootSystem) -> int:
    f, n = rs.type.family, rs.rank
    if f == "A":
        return math.factorial(n + 1)
    if f in "BC":
        return 2**n * math.factorial(n)
    if f == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040, "E8": 696729600}[str(rs.type)]


def enumerate_elements(rs: RootSystem, limit: int | None = None) -> list[WeylElement]:
    """Every element of W exactly once, by breadth-first search over words."""
    limit = DEFAULT_LIMIT if limit is None else limit
    total = order(rs)
    if total > limit:
        raise Refusal(
            f"|W({rs.type})| = {total} exceeds the enumeration limit {limit}",
            alternatives=["minimal-normal-witnesses", "monte-carlo"],
            order=total,
        )
    if len(rs.roots) > 256:
        raise Refusal("enumeration is limited to root systems with at most 256 roots", order=total)
    gens = [g.perm + _PAD[len(g.perm):] for g in simple_reflections(rs)]
    start = _PAD[: len(rs.roots)]
    seen = {start}
    frontier = [start]
    out = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for t in gens:
                q = p.translate(t)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        out.extend(nxt)
        frontier = nxt
    assert len(out) == total, "BFS enumeration disagrees with the stabilizer chain"
    return [WeylElement(rs, p) for p in out]


def _residue(v, p):
    return tuple(c % p for c in v)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def kernel_mod_p(rs: RootSystem, p: int, include_minus_one: bool = True) -> GroupHandle:
    """Subgroup of ``<W, -1>`` (or of ``W``) acting trivially on ``Q/pQ``.

    The group acts on the roots and, through reduction mod p, on the set of
    residue classes of roots.  With the residues of the simple roots placed
    first in the base, the kernel is the pointwise stabilizer of that prefix.
    """
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    roots = rs.roots
    N = len(roots)
    classes: dict[tuple, int] = {}
    for r in roots:
        classes.setdefault(_residue(r, p), N + len(classes))
    root_class = [classes[_residue(r, p)] for r in roots]
    degree = N + len(classes)

    def extend(g: WeylElement) -> np.ndarray:
        arr = np.empty(degree, dtype=np.int32)
        arr[:N] = g.as_array()
        for k in range(N):
            arr[root_class[k]] = root_class[g.perm[k]]
        return arr

    gens = simple_reflections(rs)
    if include_minus_one and not rs.has_minus_one():
        gens.append(minus_one(rs))
    base = [root_class[i] for i in range(rs.rank)]
    chain = StabilizerChain([extend(g) for g in gens], degree, base=base)
    r = rs.rank
    kernel_gens = []
    for h in chain.stabilizer_generators(r):
        kernel_gens.append(WeylElement.from_array(rs, h[:N]))
    kernel_order = chain.stabilizer_order(r)
    if kernel_gens:
        sub = StabilizerChain([g.as_array() for g in kernel_gens], N)
        assert sub.order == kernel_order
    handle = GroupHandle(rs, kernel_gens, domain="roots", order=kernel_order)
    handle.info.update(p=p, include_minus_one=include_minus_one, ambient_order=chain.order)
    return handle


def sign_flip_subgroup(rs: RootSystem) -> GroupHandle:
    """Even sign changes of the eps coordinates (types B, C, D)."""
    if rs.type.family not in "BCD":
        raise DomainError(f"no sign-flip subgroup for type {rs.type}")
    gens = [sign_flip(rs, (i, i + 1)) for i in range(rs.rank - 1)]
    return GroupHandle(rs, gens)


def sign_flip(rs: RootSystem, coords) -> WeylElement:
    """The element negating the given eps coordinates (0-based)."""
    amb = {rs.to_ambient(r): k for k, r in zip(range(len(rs.roots)), rs.roots)}
    images = []
    for r in rs.roots:
        v = list(rs.to_ambient(r))
        for c in coords:
            v[c] = -v[c]
        try:
            images.append(amb[tuple(v)])
        except KeyError:
            raise DomainError("sign change does not preserve the roots") from None
    return WeylElement(rs, pack(images))


def normal_closure(rs: RootSystem, elements, seed: int = 0) -> StabilizerChain:
    """Stabilizer chain of the normal closure in W of ``elements``."""
    conj = simple_reflections(rs)
    degree = len(rs.roots)
    members = list(elements)
    chain = StabilizerChain([g.as_array() for g in members], degree, seed=seed)
    queue = list(members)
    while queue:
        h = queue.pop()
        for s in conj:
            c = s * h * s
            if chain.extend(c.as_array()):
                queue.append(c)
    return chain
