"""Stabilizer chains for permutation groups (Schreier-Sims).

Permutations are numpy integer arrays ``p`` with ``p[i]`` the image of ``i``;
``a[b]`` is the composite "first b, then a".  A chain is built by a seeded
random Schreier-Sims phase followed by a deterministic pass that sifts every
Schreier generator, so the resulting base and strong generating set are
verified and the order is exact.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterator, Sequence

import numpy as np

DTYPE = np.int32


def as_perm(p) -> np.ndarray:
    return np.asarray(p, dtype=DTYPE)


def inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def is_identity(p: np.ndarray) -> bool:
    return bool((p == np.arange(len(p))).all())


class StabilizerChain:
    """Base and strong generating set for the group generated by ``generators``.

    ``base`` may be seeded with a prefix of points; those levels are kept even
    when their basic orbits are trivial, which makes pointwise stabilizers of
    the prefix available through :meth:`stabilizer_generators`.
    """

    def __init__(self, generators: Sequence, degree: int, base: Sequence[int] = (), seed: int = 0):
        self.degree = degree
        self._id = np.arange(degree, dtype=DTYPE)
        self.base: list[int] = [int(b) for b in base]
        self._gens: list[list[np.ndarray]] = [[] for _ in self.base]
        self._trans: list[dict[int, np.ndarray]] = []
        self._itrans: list[dict[int, np.ndarray]] = []
        self._rng = random.Random(seed)
        gens = [as_perm(g) for g in generators]
        for g in gens:
            if len(g) != degree:
                raise ValueError("generator has the wrong degree")
        self.generators = [g for g in gens if not is_identity(g)]
        self._rebuild_transversals(len(self.base) - 1)
        if self.generators:
            self._random_phase()
            self._verify()

    # -- bookkeeping --------------------------------------------------------

    def _strong(self, level: int) -> list[np.ndarray]:
        return [g for gs in self._gens[level:] for g in gs]

    def _orbit(self, level: int):
        b = self.base[level]
        trans = {b: self._id}
        queue = [b]
        gens = self._strong(level)
        for x in queue:
            u = trans[x]
            for s in gens:
                y = int(s[x])
                if y not in trans:
                    trans[y] = s[u]
                    queue.append(y)
        return trans, {x: inverse(u) for x, u in trans.items()}

    def _rebuild_transversals(self, upto: int):
        while len(self._trans) < len(self.base):
            self._trans.append({})
            self._itrans.append({})
        for i in range(upto + 1):
            self._trans[i], self._itrans[i] = self._orbit(i)

    def _add(self, h: np.ndarray, level: int):
        if level == len(self.base):
            moved = np.nonzero(h != self._id)[0]
            self.base.append(int(moved[0]))
            self._gens.append([])
        self._gens[level].append(h)
        self._rebuild_transversals(level)

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.base)):
            x = int(g[self.base[i]])
            inv = self._itrans[i].get(x)
            if inv is None:
                return g, i
            g = inv[g]
        return g, len(self.base)

    def _random_phase(self, patience: int = 30):
        pool = [g.copy() for g in self.generators]
        while len(pool) < 10:
            pool.append(pool[len(pool) % len(self.generators)].copy())
        acc = self._id.copy()
        rng = self._rng

        def step():
            nonlocal acc
            i, j = rng.sample(range(len(pool)), 2)
            if rng.random() < 0.5:
                pool[i] = pool[i][pool[j]]
            else:
                pool[i] = pool[j][pool[i]]
            acc = acc[pool[i]]
            return acc

        for _ in range(50):
            step()
        quiet = 0
        while quiet < patience:
            h, level = self.sift(step())
            if level < len(self.base) or not is_identity(h):
                self._add(h, level)
                quiet = 0
            else:
                quiet += 1

    def _verify(self):
        # every generator must lie in the group described by the chain
        for g in self.generators:
            h, level = self.sift(g)
            if level < len(self.base) or not is_identity(h):
                self._add(h, level)
        i = len(self.base) - 1
        while i >= 0:
            added = None
            gens = self._strong(i)
            for x, u in list(self._trans[i].items()):
                for s in gens:
                    y = int(s[x])
                    g = self._itrans[i][y][s[u]]
                    h, level = self.sift(g, i + 1)
                    if level < len(self.base) or not is_identity(h):
                        self._add(h, level)
                        added = level
                        break
                if added is not None:
                    break
            if added is None:
                i -= 1
            else:
                i = min(added, len(self.base) - 1)

    # -- queries ------------------------------------------------------------

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self._trans]

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    @property
    def strong_generators(self) -> list[np.ndarray]:
        return self._strong(0)

    def stabilizer_generators(self, level: int) -> list[np.ndarray]:
        """Generators of the pointwise stabilizer of ``base[:level]``."""
        return self._strong(level)

    def stabilizer_order(self, level: int) -> int:
        return math.prod(self.orbit_sizes[level:])

    def contains(self, g) -> bool:
        h, level = self.sift(as_perm(g))
        return level == len(self.base) and is_identity(h)

    def extend(self, g) -> bool:
        """Add ``g`` to the group; returns False if it was already a member."""
        g = as_perm(g)
        if self.contains(g):
            return False
        self.generators.append(g)
        self._verify()
        return True

    def random_element(self, rng: random.Random) -> np.ndarray:
        g = self._id
        for trans in self._trans:
            g = g[trans[rng.choice(sorted(trans))]]
        return g

    def element_blocks(self, block_size: int = 1 << 15) -> Iterator[np.ndarray]:
        """Yield every group element exactly once, as rows of 2-d arrays.

        Each element is written ``u_0 u_1 ... u_k`` with ``u_i`` from the
        i-th transversal; the deepest levels are expanded into one array and
        the remaining ones are iterated in Python.
        """
        reps = [list(t.values()) for t in self._trans]
        block = self._id[None, :]
        split = len(reps)
        while split > 0 and len(block) * len(reps[split - 1]) <= block_size:
            split -= 1
            block = np.concatenate([u[block] for u in reps[split]])
        for combo in itertools.product(*reps[:split]):
            g = self._id
            for u in combo:
                g = g[u]
            yield g[block]
