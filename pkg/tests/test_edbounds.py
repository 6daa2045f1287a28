import json

import pytest

from essdim.edbounds import (
    GroupDescriptor,
    audit,
    best_bound,
    big_o_target,
    bound_compression,
    bound_exact_sequence,
    bound_sl_transfer,
    candidates,
    coprime_reduce,
    frobenius_bound,
    group_dim,
    known_values,
    m_free_bound,
    replay,
    simple_descriptors,
    sl_mu_chain,
    step,
)
from essdim.rootsys import DomainError

P = GroupDescriptor.parse


def route_value(group, route, char=0):
    vals = [c.value for c in candidates(P(group, char)) if c.route == route]
    assert vals, f"no {route} route for {group}"
    return min(vals)


# -- golden table --------------------------------------------------------------


@pytest.mark.parametrize("group,value", [("E6adj", 65), ("E7adj", 118), ("E8", 231)])
def test_exceptional_adjoint(group, value):
    assert route_value(group, "short-root") == value
    assert best_bound(P(group)).value == value


@pytest.mark.parametrize("n", range(4, 11))
def test_pso(n):
    assert route_value(f"PSO{2 * n}", "short-root") == 2 * n * n - 3 * n - 1


@pytest.mark.parametrize("n", range(4, 13))
def test_pgl(n):
    assert route_value(f"PGL{n}", "cycle-types") == n * n - 3 * n + 1


@pytest.mark.parametrize("n", range(4, 13))
def test_sl_mu_chain(n):
    for m in (d for d in range(1, n + 1) if n % d == 0):
        report = sl_mu_chain(n, m)
        assert report.value == n * n - 3 * n + n // m + 1
        assert replay(report)
        if 1 < m < n:
            assert best_bound(P(f"SL{n}/mu{m}")).value <= report.value


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
def test_psp(n, p):
    expected = 2 * n * n - 3 * n - 6 if (p and n % p == 0 and n > 4) else 2 * n * n - 3 * n - 4
    assert route_value(f"PSp{2 * n}", "sp-wedge2", p) == expected


def test_psp8_char2():
    assert route_value("PSp8", "sp-wedge2", 2) == 16
    assert best_bound(P("PSp8", 2)).value == 16


def test_gl8_mu2():
    assert route_value("GL8/mu2", "sp-wedge2>surjection") == 16
    assert best_bound(P("GL8/mu2")).value == 8
    assert best_bound(P("GL8/mu2", 2)).value == 10


def test_exceptional_simply_connected_routes():
    assert route_value("F4", "short-root") == 19
    assert route_value("E6sc", "short-root>f4-subgroup") == 20
    assert route_value("E6sc", "minuscule") == 21
    assert route_value("E7sc", "minuscule") == 49


def test_exceptional_best_depends_on_characteristic():
    assert best_bound(P("F4", 2)).value == 19
    assert best_bound(P("F4", 0)).value == 7
    assert best_bound(P("E6sc", 3)).value == 20
    assert best_bound(P("E7sc", 2)).value == 49
    assert best_bound(P("E7sc", 5)).value == 11


@pytest.mark.parametrize("n,value", [(12, 26), (16, 120)])
def test_hspin(n, value):
    assert route_value(f"HSpin{n}", "half-spin") == value


# -- rules -----------------------------------------------------------------------


def test_rule_arithmetic():
    assert bound_exact_sequence(5, 1) == (5, 6)
    assert bound_sl_transfer(7, 6, 3) == 8
    assert bound_sl_transfer(7, 6, 6) == 7
    with pytest.raises(DomainError):
        bound_sl_transfer(7, 6, 4)
    with pytest.raises(DomainError):
        bound_compression(3, 10)


@pytest.mark.parametrize("n,m,out", [(12, 2, 4), (6, 3, 3), (9, 9, 9), (12, 6, 12), (10, 5, 5)])
def test_coprime_reduce(n, m, out):
    assert coprime_reduce(n, m) == out


def test_coprime_reduce_needs_divisor():
    with pytest.raises(DomainError):
        coprime_reduce(6, 4)


@pytest.mark.parametrize("args,out", [((3, 2, 1, 1), (3, 7)), ((5, 2, 2, 1), (5, 21)), ((4, 3, 1, 1), (4, 13))])
def test_frobenius(args, out):
    assert frobenius_bound(*args) == out


def test_frobenius_needs_positive_characteristic():
    with pytest.raises(DomainError):
        frobenius_bound(3, 0, 1, 1)


def test_frobenius_route_only_in_positive_characteristic():
    assert not [c for c in candidates(P("SL6/mu2")) if c.route == "frobenius"]
    assert [c for c in candidates(P("SL6/mu2", 3)) if c.route == "frobenius"]


def test_m_free_bound():
    assert m_free_bound(8) == 64 - 24 + 1 + 2


def test_step_records_prev():
    s = step("extension-by-torus", "x", prev=type("R", (), {"value": 4})(), dim_c=1)
    assert dict(s.inputs) == {"prev": 4, "dim_c": 1} and s.value == 5


# -- known values ------------------------------------------------------------------


def test_known_values():
    assert [k.value for k in known_values(P("PGL2"))] == [2]
    assert known_values(P("PGL2"))[0].kind == "exact"
    so9 = known_values(P("SO9"))
    assert so9[0].value == 8 and so9[0].kind == "exact"
    assert known_values(P("SO9", 2))[0].value == 5
    assert best_bound(P("Sp8")).value == 0
    assert best_bound(P("SL7")).value == 0
    so8 = best_bound(P("SO8", 2))
    assert (so8.lower, so8.value, so8.kind) == (4, 5, "upper")
    assert all(k.external for k in known_values(P("G2")))


def test_psp10_odd_rank_known_value_wins():
    b = best_bound(P("PSp10"))
    assert b.value == 6 and b.kind == "exact"
    assert route_value("PSp10", "sp-wedge2") == 31


def test_sl6_mu2_best_uses_coprime_reduction():
    b = best_bound(P("SL6/mu2"))
    assert b.value == 3
    assert "coprime" in b.route
    assert sl_mu_chain(6, 2).value == 22


def test_exact_beats_equal_upper():
    b = best_bound(P("G2"))
    assert b.kind == "exact" and b.value == 3


def test_spin_lower_bound():
    b = best_bound(P("Spin19"))
    assert b.lower == group_dim(P("Spin19")) + 1
    assert b.value >= b.lower


# -- descriptors -------------------------------------------------------------------


def test_descriptor_normalization():
    assert P("SL6/mu6") == P("PGL6")
    assert P("SL6/mu1") == P("SL6")
    assert P("PSp4") == P("SO5")
    assert P("E8sc") == P("E8")
    assert GroupDescriptor.named("PSp", 8, 2).name == "PSp8"
    assert group_dim(P("GL8/mu2")) == 64
    assert group_dim(P("E8")) == 248


@pytest.mark.parametrize("bad", ["SL6/mu4", "HSpin10", "PSO7", "Sp7", "SO4", "foo"])
def test_bad_descriptors(bad):
    with pytest.raises(DomainError):
        P(bad)


def test_bad_characteristic():
    with pytest.raises(DomainError):
        P("E8", 4)


# -- self audit -----------------------------------------------------------------------


@pytest.mark.parametrize("char", [0, 2, 3, 5])
def test_big_o_sweep(char):
    descriptors = simple_descriptors(2, 8, char)
    assert len(descriptors) >= 60
    for d in descriptors:
        result = audit(d)
        assert result["replay"], d
        if not d.is_spin:
            assert best_bound(d).value <= big_o_target(d), d


def test_every_candidate_replays_and_serializes():
    for g in ["E6sc", "SL12/mu6", "GL12/mu4", "PSp12", "HSpin16", "SO10"]:
        for c in candidates(P(g, 3)):
            assert replay(c)
            json.dumps(c.to_dict())


def test_tampered_chain_fails_replay():
    report = sl_mu_chain(8, 2)
    s = report.steps[-1]
    report.steps[-1] = type(s)(s.rule, s.anchor, s.inputs, s.value + 1)
    assert not replay(report)
