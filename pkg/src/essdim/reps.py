"""Character lattices, weight multisets, and dimension formulas.

Weights are stored twice: in coordinates of the declared character lattice
(so lattice-span questions are direct SNF computations) and in
fundamental-weight coordinates (where simple reflections act by a simple
formula).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .intlat import Matrix, det, freeze, hnf, integral_coordinates
from .rootsys import DomainError, RootSystem, Vector, build
from .weyl import WeylElement, weight_orbit


@dataclass(frozen=True)
class CharacterLattice:
    """A lattice ``Q <= X <= P``, given by a row basis in weight coordinates."""

    rs: RootSystem
    basis: Matrix
    label: str

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def index_in_weight_lattice(self) -> int:
        return abs(det(self.basis))

    def coordinates(self, weight) -> Vector:
        c = integral_coordinates(self.basis, weight)
        if c is None:
            raise DomainError(f"weight {weight} is not in the {self.label} lattice")
        return c

    def contains(self, weight) -> bool:
        return integral_coordinates(self.basis, weight) is not None

    def contains_root_lattice(self) -> bool:
        return all(self.contains(row) for row in self.rs.cartan)


def adjoint_lattice(rs: RootSystem) -> CharacterLattice:
    return CharacterLattice(rs, rs.cartan, "adjoint")


def simply_connected_lattice(rs: RootSystem) -> CharacterLattice:
    n = rs.rank
    return CharacterLattice(rs, freeze([[int(i == j) for j in range(n)] for i in range(n)]), "simply-connected")


def half_spin_lattice(n: int) -> CharacterLattice:
    """Characters of a maximal torus of the half-spin group ``HSpin_n``."""
    if n % 4 or n < 12:
        raise DomainError(f"HSpin_{n} requires n divisible by 4 and n >= 12")
    rs = build(f"D{n // 2}")
    r = rs.rank
    omega = tuple(int(j == r - 1) for j in range(r))
    basis = hnf(list(rs.cartan) + [omega])
    return CharacterLattice(rs, basis, "half-spin")


@dataclass(frozen=True)
class WeightMultiset:
    """Weights of a representation of a maximal torus, with multiplicities."""

    lattice: CharacterLattice
    weights: tuple[Vector, ...]
    weights_p: tuple[Vector, ...]
    multiplicities: tuple[int, ...]
    label: str = ""

    @classmethod
    def from_weights(cls, lattice: CharacterLattice, weights_p, label="") -> "WeightMultiset":
        counts = Counter(tuple(w) for w in weights_p)
        wp = tuple(sorted(counts, reverse=True))
        return cls(
            lattice,
            tuple(lattice.coordinates(w) for w in wp),
            wp,
            tuple(counts[w] for w in wp),
            label,
        )

    @property
    def rs(self) -> RootSystem:
        return self.lattice.rs

    def __len__(self):
        return len(self.weights)

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities)

    @property
    def multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    @property
    def negation_closed(self) -> bool:
        s = set(self.weights_p)
        return all(tuple(-c for c in w) in s for w in s)

    def _index(self):
        return {w: k for k, w in zip(range(len(self.weights_p)), self.weights_p)}

    def action_perm(self, g: WeylElement) -> tuple[int, ...]:
        """Permutation of the weights induced by ``g``."""
        M = self.rs.weight_matrix(g.matrix)
        idx = self._index()
        n = self.rs.rank
        out = []
        for w in self.weights_p:
            img = tuple(sum(M[i][j] * w[j] for j in range(n)) for i in range(n))
            if img not in idx:
                raise DomainError("element does not stabilize the weight set")
            out.append(idx[img])
        return tuple(out)

    def reflection_perms(self) -> list[tuple[int, ...]]:
        """Permutations of the weights under the simple reflections."""
        C = self.rs.cartan
        n = self.rs.rank
        idx = self._index()
        perms = []
        for i in range(n):
            perm = []
            for lam in self.weights_p:
                c = lam[i]
                perm.append(idx[tuple(lam[j] - c * C[i][j] for j in range(n))])
            perms.append(tuple(perm))
        return perms

    def is_weyl_stable(self) -> bool:
        C = self.rs.cartan
        n = self.rs.rank
        counts = dict(zip(self.weights_p, self.multiplicities))
        for i in range(n):
            for lam, m in counts.items():
                mu = tuple(lam[j] - lam[i] * C[i][j] for j in range(n))
                if counts.get(mu) != m:
                    return False
        return True


def short_root_module(rs: RootSystem) -> WeightMultiset:
    """Nonzero weights of the module whose highest weight is the highest short root."""
    lat = adjoint_lattice(rs)
    wp = [rs.to_weight_coords(r) for r in rs.short_roots()]
    ms = WeightMultiset.from_weights(lat, wp, f"short roots of {rs.type}")
    assert ms.multiplicity_free
    return ms


_MINUSCULE = {("E", 6): (1, 6), ("E", 7): (7,)}


def minuscule_module(rs: RootSystem, fundamental_index: int, lattice: CharacterLattice | None = None) -> WeightMultiset:
    """W-orbit of a minuscule fundamental weight (1-based Bourbaki index).

    Supported: ``E6`` with 1 or 6, ``E7`` with 7, and the half-spin weights
    ``n-1``, ``n`` of ``D_n``.
    """
    f, n = rs.type.family, rs.rank
    allowed = _MINUSCULE.get((f, n), (n - 1, n) if f == "D" else ())
    if fundamental_index not in allowed:
        raise DomainError(f"omega_{fundamental_index} of {rs.type} is not a supported minuscule weight")
    omega = tuple(int(j == fundamental_index - 1) for j in range(n))
    lat = lattice or simply_connected_lattice(rs)
    ms = WeightMultiset.from_weights(lat, weight_orbit(rs, omega), f"{rs.type} omega_{fundamental_index}")
    assert ms.multiplicity_free
    return ms


def c_lambda2_dim(n: int, p: int) -> int:
    """Dimension of the irreducible ``Sp_2n``-module with highest weight omega_2."""
    if n < 2:
        raise DomainError("n must be at least 2")
    if p and n % p == 0:
        return 2 * n * n - n - 2
    return 2 * n * n - n - 1


def spin_faithful_dim(n: int) -> int:
    """Spin representation (n odd) or vector plus half-spin (n even)."""
    if n < 7:
        raise DomainError("Spin_n is only treated for n >= 7")
    if n % 2:
        return 2 ** ((n - 1) // 2)
    return n + 2 ** (n // 2 - 1)


def half_spin_dim(n: int) -> int:
    return 2 ** (n // 2 - 1)


def exterior_square_dim(m: int) -> int:
    return math.comb(m, 2)
