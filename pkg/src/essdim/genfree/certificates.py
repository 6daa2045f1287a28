"""Generic-freeness certificates for N(T) acting on multiplicity-free modules.

A module with weight set Omega gets a passing certificate when

* the torus acts faithfully (Omega, or the differences of Omega in the
  projective case, generate the character lattice), and
* every nontrivial Weyl element acts nontrivially on the kernel of the
  summation map ``psi: Z^Omega -> T^*``.

The second condition is checked by one of three strategies: an exhaustive
sweep of W, a table of normal subgroups that every nontrivial normal subgroup
of W contains, or random sampling.
"""

from __future__ import annotations

import functools
import logging
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from ..intlat import INFINITE, cokernel_order, inverse_rational, kernel_basis, snf, transpose
from ..permgroup import StabilizerChain
from ..reps import (
    WeightMultiset,
    half_spin_dim,
    half_spin_lattice,
    minuscule_module,
    short_root_module,
)
from ..rootsys import DomainError, RootSystem, build
from ..weyl import (
    DEFAULT_LIMIT,
    Refusal,
    WeylElement,
    closed_form_order,
    from_word,
    longest_element,
    normal_closure,
    sign_flip,
    simple_reflections,
)

log = logging.getLogger(__name__)

STRATEGIES = ("exhaustive", "minimal-normal-witnesses", "monte-carlo")


@dataclass
class Certificate:
    target: str
    verdict: str
    strategy: str
    kernel_rank: int
    witnesses: list[dict] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)
    bound: int | None = None
    checked: int = 0

    @property
    def id(self) -> str:
        return f"{self.target}/{self.strategy}"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["id"] = self.id
        return d


@dataclass(frozen=True)
class TorusCheck:
    free: bool
    kernel_order: int | float

    def __bool__(self):
        return self.free


def torus_generically_free(weights: WeightMultiset, projective: bool) -> TorusCheck:
    """Decide faithfulness of T on V (or P(V)) from the weight lattice span."""
    ws = list(weights.weights)
    if not ws:
        raise DomainError("empty weight set")
    if projective:
        base = ws[0]
        ws = [tuple(a - b for a, b in zip(w, base)) for w in ws[1:]]
    order = cokernel_order(ws, weights.lattice.rank) if ws else INFINITE
    return TorusCheck(order == 1, order)


@functools.lru_cache(maxsize=16)
def psi_kernel(weights: WeightMultiset) -> list[tuple[int, ...]]:
    """Saturated basis of ker(psi) inside Z^Omega.

    When some weights form a basis of the lattice spanned by all of them,
    each remaining weight's coordinates in that basis give one kernel vector
    and together these are already saturated.  Otherwise fall back to SNF.
    """
    if not weights.multiplicity_free:
        raise DomainError("psi is only set up for multiplicity-free weight sets")
    ws = weights.weights
    chosen = _independent_subset(ws)
    if len(chosen) == weights.lattice.rank:
        inv = inverse_rational([ws[i] for i in chosen])
        r = len(chosen)
        rows = []
        for j, w in enumerate(ws):
            if j in chosen:
                continue
            x = [sum(w[k] * inv[k][i] for k in range(r)) for i in range(r)]
            if any(c.denominator != 1 for c in x):
                break
            v = [0] * len(ws)
            v[j] = 1
            for i, c in zip(chosen, x):
                v[i] = -int(c)
            rows.append(tuple(v))
        else:
            return rows
    return kernel_basis(transpose(ws))


def _independent_subset(ws) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset."""
    echelon: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for j, w in enumerate(ws):
        v = [Fraction(c) for c in w]
        for piv, row in echelon:
            if v[piv]:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is not None:
            echelon.append((piv, v))
            chosen.append(j)
            if len(chosen) == len(w):
                break
    return chosen


def psi_rank(weights: WeightMultiset) -> int:
    return snf(weights.weights).rank


def _kernel_array(kernel) -> np.ndarray:
    big = max((abs(c) for v in kernel for c in v), default=0)
    return np.array(kernel, dtype=np.int64 if big < 2**62 else object).reshape(len(kernel), -1)


def cycle_deficit(perm) -> int:
    """``sum(len(c) - 1)`` over the cycles of ``perm``, i.e. n minus the cycle count."""
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return len(perm) - cycles


def perm_trivial_on_kernel(perm, K: np.ndarray, rank_psi: int) -> bool:
    if cycle_deficit(perm) > rank_psi:
        return False
    return bool((K[:, list(perm)] == K).all())


def acts_trivially_on_kernel(w: WeylElement, weights: WeightMultiset, kernel) -> bool:
    """Whether ``w`` fixes every vector of ker(psi).

    A permutation fixes the lattice exactly when each kernel vector is constant
    on its cycles.  Since the fixed space has rank equal to the number of
    cycles, a permutation whose cycle deficit exceeds rank(psi) cannot fix the
    kernel, and that is tested first.
    """
    perm = weights.action_perm(w)
    m = len(weights)
    if not kernel:
        return True
    return perm_trivial_on_kernel(perm, _kernel_array(kernel), m - len(kernel))


def negation_half(weights: WeightMultiset) -> list[tuple[int, ...]]:
    """A set P with Omega = P disjoint-union -P (zero weights excluded)."""
    s = set(weights.weights_p)
    if not weights.negation_closed or any(not any(w) for w in s):
        raise DomainError("weight set is not closed under negation or contains 0")
    return [w for w in weights.weights_p if w > tuple(-c for c in w)]


def minus_one_moves_kernel(weights: WeightMultiset, dim_t: int) -> bool:
    """The counting criterion |P| > dim T, cross-checked by a direct test of -1."""
    P = negation_half(weights)
    by_count = len(P) > dim_t
    idx = {w: k for k, w in enumerate(weights.weights_p)}
    perm = [idx[tuple(-c for c in w)] for w in weights.weights_p]
    kernel = psi_kernel(weights)
    direct = bool(kernel) and not perm_trivial_on_kernel(perm, _kernel_array(kernel), len(weights) - len(kernel))
    if by_count and not direct:
        raise AssertionError("counting criterion and direct test disagree")
    return by_count


# -- normal subgroups ---------------------------------------------------------


def minimal_normal_generators(rs: RootSystem) -> list[tuple[str, WeylElement]]:
    """Named elements of W covering its nontrivial normal subgroups.

    Every nontrivial normal subgroup of W contains the normal closure of at
    least one of the returned elements.  The table is per family; tests
    confirm the closures are normal and nontrivial, and sample the covering
    property.
    """
    f, n = rs.type.family, rs.rank
    out: list[tuple[str, WeylElement]] = []
    if rs.has_minus_one():
        out.append(("-1", longest_element(rs)))
    if f == "A":
        if n == 2:
            out.append(("rotations of order 3", from_word(rs, (1, 2))))
        elif n == 3:
            out.append(("Klein four-group", from_word(rs, (1, 3))))
        elif n >= 4:
            out.append(("alternating group", from_word(rs, (1, 2))))
    elif f in "BCD":
        out.append(("even sign changes", sign_flip(rs, (0, 1))))
    elif f == "E" and n in (6, 7):
        out.append(("rotation subgroup", from_word(rs, (1, 3))))
    elif f == "G":
        out.append(("rotations of order 3", from_word(rs, (1, 2, 1, 2))))
    return out


# -- strategies ---------------------------------------------------------------


def _omega_chain(rs: RootSystem, weights: WeightMultiset) -> StabilizerChain:
    """Chain for W acting on roots followed by weights (faithful by construction)."""
    N = len(rs.roots)
    gens = [
        np.concatenate([g.as_array(), N + np.asarray(p, dtype=np.int32)])
        for g, p in zip(simple_reflections(rs), weights.reflection_perms())
    ]
    return StabilizerChain(gens, N + len(weights))


def _witness(rs: RootSystem, g: WeylElement, reason: str) -> dict:
    try:
        word = list(g.reduced_word())
    except DomainError:
        word = None
    return {"kind": "weyl-element", "word": word, "matrix": [list(r) for r in g.matrix], "reason": reason}


def _sweep(rs, weights, K, rank_psi, cert):
    N = len(rs.roots)
    m = len(weights)
    chain = _omega_chain(rs, weights)
    if chain.order != closed_form_order(rs):
        raise AssertionError("stabilizer chain order disagrees with |W|")
    ident_full = np.arange(N + m)
    ident = np.arange(m)
    checked = 0
    for block in chain.element_blocks():
        omega = block[:, N:] - N
        moved = (omega != ident).sum(axis=1)
        checked += len(block)
        # cycle deficit >= moved / 2, so anything moving more than 2 rank(psi) points is nontrivial
        for i in np.nonzero(2 * rank_psi >= moved)[0]:
            row = block[i]
            if (row == ident_full).all():
                continue
            if bool((K[:, omega[i]] == K).all()):
                g = WeylElement.from_array(rs, row[:N])
                cert.witnesses.append(_witness(rs, g, "acts trivially on ker psi"))
                cert.checked = checked
                return False
    cert.checked = checked - 1
    return True


def faithful_kernel_action(
    rs: RootSystem,
    weights: WeightMultiset,
    strategy: str = "auto",
    limit: int | None = None,
    trials: int = 5,
    seed: int = 0,
    target: str = "",
) -> Certificate:
    """Check that W acts faithfully on ker(psi) for the weights of a module."""
    limit = DEFAULT_LIMIT if limit is None else limit
    order = closed_form_order(rs)
    if strategy == "auto":
        strategy = "exhaustive" if order <= limit else "minimal-normal-witnesses"
    if strategy not in STRATEGIES:
        raise DomainError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    if strategy == "exhaustive" and order > limit:
        raise Refusal(
            f"|W({rs.type})| = {order} exceeds the sweep limit {limit}",
            alternatives=["minimal-normal-witnesses", "monte-carlo"],
            order=order,
        )
    kernel = psi_kernel(weights)
    rank_psi = len(weights) - len(kernel)
    cert = Certificate(target or str(rs.type), "pass", strategy, len(kernel))
    cert.provenance.append(f"ker psi has rank {len(kernel)} (|Omega| = {len(weights)}, rank psi = {rank_psi})")
    if not kernel:
        cert.verdict = "fail"
        cert.witnesses.append({"kind": "empty-kernel", "reason": "ker psi is zero, so W cannot act faithfully"})
        return cert
    K = _kernel_array(kernel)

    def nontrivial(g: WeylElement) -> bool:
        return not perm_trivial_on_kernel(weights.action_perm(g), K, rank_psi)

    if strategy == "exhaustive":
        ok = _sweep(rs, weights, K, rank_psi, cert)
        cert.provenance.append(f"swept all {order} elements of W({rs.type})")
        if not ok:
            cert.verdict = "fail"
        return cert

    if strategy == "minimal-normal-witnesses":
        gens = minimal_normal_generators(rs)
        for name, g in gens:
            cert.checked += 1
            if nontrivial(g):
                cert.provenance.append(f"{name}: acts nontrivially on ker psi")
            else:
                cert.verdict = "fail"
                cert.witnesses.append(_witness(rs, g, f"{name} acts trivially on ker psi"))
        if any(name == "-1" for name, _ in gens) and weights.negation_closed:
            P = negation_half(weights)
            cert.provenance.append(f"-1 also moves ker psi by counting: |P| = {len(P)} > dim T = {rs.rank}"
                                   if len(P) > rs.rank else f"counting criterion inconclusive: |P| = {len(P)}")
        cert.provenance.append("each nontrivial normal subgroup of W contains one of the listed normal closures")
        return cert

    # monte-carlo: sampled elements must move ker psi, and their normal closures should contain -1
    rng = random.Random(seed)
    chain = StabilizerChain([g.as_array() for g in simple_reflections(rs)], len(rs.roots), seed=seed)
    minus = longest_element(rs) if rs.has_minus_one() else None
    if minus is not None and not nontrivial(minus):
        cert.verdict = "fail"
        cert.witnesses.append(_witness(rs, minus, "-1 acts trivially on ker psi"))
        return cert
    with_minus = 0
    for _ in range(trials):
        g = WeylElement.from_array(rs, chain.random_element(rng))
        if g.is_identity():
            continue
        cert.checked += 1
        if not nontrivial(g):
            cert.verdict = "fail"
            cert.witnesses.append(_witness(rs, g, "sampled element acts trivially on ker psi"))
            return cert
        if minus is not None and normal_closure(rs, [g], seed=seed).contains(minus.as_array()):
            with_minus += 1
    cert.provenance.append(f"seed {seed}: {cert.checked} random elements move ker psi")
    if minus is not None:
        cert.provenance.append(f"-1 moves ker psi; {with_minus} of {cert.checked} sampled normal closures contain -1")
    return cert


# -- certified modules --------------------------------------------------------

SHORT_TYPES = "A_n (n>=2), C_n (n>=3), D_n (n>=4), E6, E7, E8, F4"


def _in_short_list(rs: RootSystem) -> bool:
    f, n = rs.type.family, rs.rank
    return (f == "A" and n >= 2) or (f == "C" and n >= 3) or (f == "D" and n >= 4) or f in "EF"


def _combine(cert: Certificate, torus: TorusCheck, projective: bool):
    kind = "P(V)" if projective else "V"
    if torus:
        cert.provenance.insert(0, f"T acts faithfully on {kind}")
    else:
        cert.verdict = "fail"
        cert.provenance.insert(0, f"T does not act faithfully on {kind}: kernel of order {torus.kernel_order}")
        cert.witnesses.append({"kind": "torus-kernel", "order": str(torus.kernel_order)})


def certify_short(rs: RootSystem | str, strategy: str = "auto", **kw) -> Certificate:
    """N(T) on P(V) for V the nonzero-weight part of the short-root module."""
    rs = build(rs) if isinstance(rs, str) else rs
    weights = short_root_module(rs)
    cert = faithful_kernel_action(rs, weights, strategy, target=f"short:{rs.type}", **kw)
    _combine(cert, torus_generically_free(weights, projective=True), projective=True)
    if not _in_short_list(rs):
        cert.provenance.append(f"type {rs.type} lies outside {SHORT_TYPES}")
    if cert.passed:
        cert.bound = len(weights) - rs.rank - 1
        cert.provenance.append(f"ed(N(T)) <= dim P(V) - dim N(T) = {len(weights) - 1} - {rs.rank} = {cert.bound}")
    return cert


def find_zero_sum_subset(weights: WeightMultiset, size: int):
    """``size`` weights summing to zero with no two equal up to sign, or None."""
    if not weights.multiplicity_free:
        raise DomainError("weights must be multiplicity-free")
    ws = list(weights.weights)
    index = {w: i for i, w in enumerate(ws)}
    r = len(ws[0]) if ws else 0
    if size < 1 or size > len(ws):
        return None

    def neg(w):
        return tuple(-c for c in w)

    def rec(start, chosen, total):
        if len(chosen) == size - 1:
            last = neg(total)
            j = index.get(last)
            if j is None or j < start:
                return None
            if any(last == ws[i] or last == neg(ws[i]) for i in chosen):
                return None
            return chosen + [j]
        for i in range(start, len(ws)):
            w = ws[i]
            if any(w == neg(ws[k]) for k in chosen):
                continue
            found = rec(i + 1, chosen + [i], tuple(a + b for a, b in zip(total, w)))
            if found:
                return found
        return None

    found = rec(0, [], (0,) * r)
    return None if found is None else [ws[i] for i in found]


def certify_minuscule(rs: RootSystem | str, fundamental_index: int, strategy: str = "auto", **kw) -> Certificate:
    """N(T) on a minuscule module of E6 or E7 (simply connected lattice)."""
    rs = build(rs) if isinstance(rs, str) else rs
    if rs.type.family != "E" or rs.rank not in (6, 7):
        raise DomainError(f"minuscule certificates cover E6 and E7 only, not {rs.type}")
    weights = minuscule_module(rs, fundamental_index)
    cert = faithful_kernel_action(rs, weights, strategy, target=f"minuscule:{rs.type}:omega{fundamental_index}", **kw)
    _combine(cert, torus_generically_free(weights, projective=False), projective=False)
    X = find_zero_sum_subset(weights, 6)
    if X is not None:
        cert.witnesses.append({"kind": "zero-sum-subset", "weights": [list(w) for w in X]})
    if cert.passed:
        cert.bound = len(weights) - rs.rank
        cert.provenance.append(f"ed(N(T)) <= dim V - dim N(T) = {len(weights)} - {rs.rank} = {cert.bound}")
    return cert


def certify_half_spin(n: int, strategy: str = "auto", **kw) -> Certificate:
    """N(T) of HSpin_n on a half-spin module, n divisible by 4 and at least 12."""
    lattice = half_spin_lattice(n)
    rs = lattice.rs
    weights = minuscule_module(rs, rs.rank, lattice)
    cert = faithful_kernel_action(rs, weights, strategy, target=f"half-spin:HSpin{n}", **kw)
    _combine(cert, torus_generically_free(weights, projective=False), projective=False)
    if minus_one_moves_kernel(weights, rs.rank):
        cert.provenance.append(f"-1 moves ker psi: |P| = {len(weights) // 2} > {rs.rank}")
    if cert.passed:
        cert.bound = half_spin_dim(n) - rs.rank
        cert.provenance.append(f"ed(N(T)) <= dim V - dim N(T) = {half_spin_dim(n)} - {rs.rank} = {cert.bound}")
    return cert
