import itertools

import pytest

from essdim.genfree.projs import certify_projs, partitions, verify_projs_inequality


def count_partitions(n):
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            p[m] += p[m - k]
    return p[n]


@pytest.mark.parametrize("n", range(1, 13))
def test_partitions(n):
    parts = list(partitions(n))
    assert len(parts) == count_partitions(n)
    assert all(sum(p) == n for p in parts)


@pytest.mark.parametrize("n", range(4, 13))
def test_inequality_holds(n):
    rows = verify_projs_inequality(n)
    assert len(rows) == count_partitions(n) - 1
    assert all(r["holds"] for r in rows)


def test_inequality_fails_at_three():
    rows = verify_projs_inequality(3)
    assert sorted(tuple(r["cycle_type"]) for r in rows if not r["holds"]) == [(2, 1), (3,)]


@pytest.mark.parametrize("n", range(4, 13))
def test_certificate(n):
    cert = certify_projs(n)
    assert cert.passed
    assert cert.bound == n * n - 3 * n + 1


def test_certificate_n3_fails():
    cert = certify_projs(3)
    assert not cert.passed and cert.bound is None


def test_inequality_by_brute_force_on_permutations():
    """Independent check on S_5: fixed-space and moved-point counts from actual permutations."""
    n = 5
    for perm in itertools.permutations(range(n)):
        seen, cycles = set(), []
        for i in range(n):
            if i not in seen:
                j, length = i, 0
                while j not in seen:
                    seen.add(j)
                    j = perm[j]
                    length += 1
                cycles.append(length)
        if all(c == 1 for c in cycles):
            continue
        moved = sum(c for c in cycles if c > 1)
        moved_cycles = sum(1 for c in cycles if c > 1)
        assert n - len(cycles) < (moved - moved_cycles) * (n - 2)
