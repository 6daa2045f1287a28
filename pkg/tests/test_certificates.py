import random

import numpy as np
import pytest

from essdim.genfree.certificates import (
    acts_trivially_on_kernel,
    certify_half_spin,
    certify_minuscule,
    certify_short,
    cycle_deficit,
    find_zero_sum_subset,
    minimal_normal_generators,
    minus_one_moves_kernel,
    psi_kernel,
    torus_generically_free,
)
from essdim.intlat import hnf, kernel_basis, transpose
from essdim.permgroup import StabilizerChain
from essdim.reps import minuscule_module, short_root_module
from essdim.rootsys import DomainError, build
from essdim.weyl import (
    Refusal,
    WeylElement,
    closed_form_order,
    enumerate_elements,
    normal_closure,
    simple_reflections,
)

SHORT_EXHAUSTIVE = [f"A{n}" for n in range(2, 8)] + [f"C{n}" for n in range(3, 7)] + [f"D{n}" for n in range(4, 8)] + ["E6", "F4"]


def short_bound(t):
    rs = build(t)
    return len(rs.short_roots()) - rs.rank - 1


@pytest.mark.parametrize("t", SHORT_EXHAUSTIVE)
def test_short_exhaustive(t):
    cert = certify_short(t, "exhaustive")
    assert cert.passed, cert.witnesses
    assert cert.bound == short_bound(t)
    assert cert.checked == closed_form_order(build(t)) - 1


@pytest.mark.slow
def test_short_exhaustive_e7():
    cert = certify_short("E7", "exhaustive")
    assert cert.passed and cert.bound == 118
    assert cert.checked == 2_903_039


@pytest.mark.parametrize("t", SHORT_EXHAUSTIVE + ["E7", "E8"])
def test_short_witness_strategy_agrees(t):
    cert = certify_short(t, "minimal-normal-witnesses")
    assert cert.passed
    assert cert.bound == short_bound(t)


def test_short_e8_values():
    cert = certify_short("E8", "minimal-normal-witnesses")
    assert cert.bound == 231


def test_short_a1_fails_with_reflection():
    cert = certify_short("A1", "exhaustive")
    assert not cert.passed
    weyl = [w for w in cert.witnesses if w["kind"] == "weyl-element"]
    assert weyl and weyl[0]["word"] == [1]
    torus = [w for w in cert.witnesses if w["kind"] == "torus-kernel"]
    assert torus and torus[0]["order"] == "2"


def test_short_b3_fails():
    assert not certify_short("B3", "exhaustive").passed


def test_monte_carlo():
    cert = certify_short("E6", "monte-carlo", trials=4, seed=11)
    assert cert.passed
    assert any("seed 11" in line for line in cert.provenance)
    assert not certify_short("A1", "monte-carlo", trials=3).passed


def test_exhaustive_refusal_lists_alternatives():
    with pytest.raises(Refusal) as e:
        certify_short("E8", "exhaustive")
    assert "minimal-normal-witnesses" in e.value.alternatives
    with pytest.raises(Refusal):
        certify_short("E6", "exhaustive", limit=1000)


def test_unknown_strategy():
    with pytest.raises(DomainError):
        certify_short("A3", "guess")


@pytest.mark.parametrize("idx", [1, 6])
def test_minuscule_e6(idx):
    cert = certify_minuscule("E6", idx, "exhaustive")
    assert cert.passed and cert.bound == 21
    assert cert.checked == 51_839
    subsets = [w for w in cert.witnesses if w["kind"] == "zero-sum-subset"]
    assert subsets and len(subsets[0]["weights"]) == 6


@pytest.mark.slow
def test_minuscule_e7_exhaustive():
    cert = certify_minuscule("E7", 7, "exhaustive")
    assert cert.passed and cert.bound == 49
    assert cert.checked == 2_903_039


def test_minuscule_e7_witnesses():
    cert = certify_minuscule("E7", 7, "minimal-normal-witnesses")
    assert cert.passed and cert.bound == 49


def test_minuscule_rejects_other_types():
    with pytest.raises(DomainError):
        certify_minuscule("D6", 6)


@pytest.mark.parametrize("n,bound", [(12, 26), (16, 120)])
def test_half_spin(n, bound):
    cert = certify_half_spin(n, "exhaustive")
    assert cert.passed and cert.bound == bound


def test_half_spin_20_by_witnesses():
    cert = certify_half_spin(20, "minimal-normal-witnesses")
    assert cert.passed and cert.bound == 2**9 - 10


# -- psi kernel ---------------------------------------------------------------


@pytest.mark.parametrize("t", ["A1", "A3", "C3", "G2", "B3", "F4"])
def test_psi_kernel_matches_snf_kernel(t):
    ms = short_root_module(build(t))
    fast = psi_kernel(ms)
    slow = kernel_basis(transpose(ms.weights))
    assert len(fast) == len(slow)
    if fast:
        assert hnf(fast) == hnf(slow)


def kernel_oracle(perm, kernel, rng, trials=25):
    """Apply the permutation to random integer combinations of the kernel basis."""
    K = np.array(kernel, dtype=np.int64)
    for _ in range(trials):
        c = np.array([rng.randint(-10**6, 10**6) for _ in range(len(kernel))], dtype=np.int64)
        v = c @ K
        if not (v[list(perm)] == v).all():
            return False
    return True


@pytest.mark.parametrize("t", ["A1", "B3", "A4", "C3", "D4", "E6"])
def test_acts_trivially_cross_validation(t):
    rs = build(t)
    ms = short_root_module(rs)
    kernel = psi_kernel(ms)
    rng = random.Random(5)
    chain = StabilizerChain([g.as_array() for g in simple_reflections(rs)], len(rs.roots), seed=1)
    elements = [WeylElement.from_array(rs, chain.random_element(rng)) for _ in range(40)]
    elements += simple_reflections(rs)
    for g in elements:
        fast = acts_trivially_on_kernel(g, ms, kernel)
        assert fast == kernel_oracle(ms.action_perm(g), kernel, rng)


def test_b3_has_a_trivially_acting_reflection():
    rs = build("B3")
    ms = short_root_module(rs)
    kernel = psi_kernel(ms)
    assert any(acts_trivially_on_kernel(g, ms, kernel) for g in simple_reflections(rs))


def test_cycle_deficit():
    assert cycle_deficit([0, 1, 2]) == 0
    assert cycle_deficit([1, 2, 0, 4, 3]) == 3


def test_torus_checks():
    assert torus_generically_free(short_root_module(build("E8")), projective=True)
    check = torus_generically_free(short_root_module(build("A1")), projective=True)
    assert not check and check.kernel_order == 2


def test_minus_one_counting_agrees_with_direct_test():
    ms = minuscule_module(build("E7"), 7)
    assert minus_one_moves_kernel(ms, 7)


def test_zero_sum_subset_e6():
    X = find_zero_sum_subset(minuscule_module(build("E6"), 1), 6)
    assert X is not None and len(X) == 6
    assert all(sum(c) == 0 for c in zip(*X))


# -- minimal normal table -------------------------------------------------------

CLOSURE_ORDERS = {
    "A2": 3, "A3": 4, "A4": 60, "A5": 360, "G2": 3, "F4": 2, "E8": 2,
    "E6": 25_920, "E7": 1_451_520, "B3": 4, "B4": 8, "C3": 4, "D4": 8, "D5": 16,
}


@pytest.mark.parametrize("t", sorted(CLOSURE_ORDERS))
def test_listed_closures_are_normal_and_nontrivial(t):
    rs = build(t)
    gens = minimal_normal_generators(rs)
    assert gens
    smallest = None
    for name, g in gens:
        assert not g.is_identity()
        closure = normal_closure(rs, [g])
        for s in simple_reflections(rs):
            assert closure.contains((s * g * s).as_array())
        if name != "-1":
            smallest = closure.order
    if smallest is None:
        smallest = 2
    assert smallest == CLOSURE_ORDERS[t]


def conjugacy_class_reps(rs):
    elements = enumerate_elements(rs)
    gens = simple_reflections(rs)
    seen, reps = set(), []
    for g in elements:
        if g.perm in seen or g.is_identity():
            continue
        reps.append(g)
        stack = [g]
        seen.add(g.perm)
        while stack:
            h = stack.pop()
            for s in gens:
                c = s * h * s
                if c.perm not in seen:
                    seen.add(c.perm)
                    stack.append(c)
    return reps


@pytest.mark.parametrize("t", ["A2", "A3", "A4", "A5", "B3", "B4", "C3", "C4", "D4", "D5", "D6", "G2", "F4", "E6"])
def test_minimal_normal_table_covers_every_normal_subgroup(t):
    """Every nonidentity element's normal closure contains a listed element."""
    rs = build(t)
    listed = [g.as_array() for _, g in minimal_normal_generators(rs)]
    for rep in conjugacy_class_reps(rs):
        closure = normal_closure(rs, [rep])
        assert any(closure.contains(x) for x in listed), rep.reduced_word()
