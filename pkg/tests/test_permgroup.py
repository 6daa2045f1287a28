import itertools
import math
import random

import numpy as np
import pytest

from essdim.permgroup import StabilizerChain, inverse, is_identity


def cycle(n):
    return list(range(1, n)) + [0]


def transposition(n, i=0, j=1):
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return p


@pytest.mark.parametrize("n", [2, 3, 5, 7, 9])
def test_symmetric_group_order(n):
    chain = StabilizerChain([cycle(n), transposition(n)], n)
    assert chain.order == math.factorial(n)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_alternating_group_order(n):
    three_cycles = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        three_cycles.append(p)
    chain = StabilizerChain(three_cycles, n)
    assert chain.order == math.factorial(n) // 2


def test_cyclic_and_membership():
    n = 12
    chain = StabilizerChain([cycle(n)], n)
    assert chain.order == n
    assert chain.contains(np.roll(np.arange(n), 5))
    assert not chain.contains(transposition(n))


def test_element_blocks_enumerate_exactly_once():
    n = 6
    chain = StabilizerChain([cycle(n), transposition(n)], n)
    seen = set()
    for block in chain.element_blocks(block_size=50):
        for row in block:
            seen.add(tuple(int(x) for x in row))
    assert len(seen) == math.factorial(n)
    assert seen == set(itertools.permutations(range(n)))


def test_random_elements_are_members_and_extend_grows():
    n = 8
    rng = random.Random(3)
    chain = StabilizerChain([cycle(n)], n)
    for _ in range(20):
        assert chain.contains(chain.random_element(rng))
    assert chain.extend(transposition(n))
    assert chain.order == math.factorial(n)
    assert not chain.extend(transposition(n, 2, 5))


def test_inverse_helpers():
    p = np.array([2, 0, 3, 1])
    assert is_identity(p[inverse(p)])
