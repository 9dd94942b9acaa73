"""Realizability of transfer systems by geometric operad families.

Two maps out of the cube of universes are computed: the "embedding" map
(here: steiner_*), generated one irreducible summand at a time via its orbit
data, and the "isometries" map (linisom_*), which for cyclic groups is
decided by the translation-invariance criterion on reduced index sets.
Non-cyclic, non-abelian cases ship as fixture tables; the module refuses to
approximate them.
"""

from __future__ import annotations

import functools
import itertools
import json
import logging
import math
from dataclasses import dataclass
from importlib import resources

from .groups import cyclic_group, make_group
from .lattice import SubgroupLattice, subgroup_lattice
from .transfer import (SearchBoundExceeded, TransferSystem, env_search_bound,
                       generate, is_saturated, irreducible_pairs)
from .bridge import system_from_orbits
from .universes import (CyclicUniverseIndexSet, all_index_sets, index_set_count,
                        lambda_kernel_order)

log = logging.getLogger(__name__)

CATALOG_GROUPS = ("K4", "Q8", "Sym3")


@dataclass(frozen=True)
class CocyclicUniverseSpec:
    """A universe over an abelian group, recorded by its proper cocyclic kernels."""

    lattice: SubgroupLattice
    kernels: frozenset[int]

    def __post_init__(self):
        if not self.lattice.group.is_abelian:
            raise ValueError(f"{self.lattice.group.name} is not abelian")
        for s in self.kernels:
            if s == self.lattice.full or not self.lattice.cocyclic[s]:
                raise ValueError(f"subgroup {self.lattice.names[s]} is not proper cocyclic")


@dataclass(frozen=True)
class RepCatalogEntry:
    """One irreducible summand: its orbit pairs (all targeting G) and dimension."""

    group: str
    rep: str
    orb_pairs: tuple[tuple[int, int], ...]
    dimension: int


@dataclass(frozen=True)
class LinIsomFixtureRow:
    """Isometries-map value for one universe, given by its summand names."""

    group: str
    universe: tuple[str, ...]
    system: TransferSystem

    @property
    def universe_label(self) -> str:
        return "(R+" + "+".join(self.universe) + ")^inf" if self.universe else "R^inf"


@dataclass(frozen=True)
class NotRealizable:
    """Verdict for a saturated system outside the isometries image."""

    tag: str
    reason: str


# -- fixtures -----------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _fixture_data() -> dict:
    from .serialize import FIXTURES_SCHEMA, validate_document
    with resources.files("trlat").joinpath("data/fixtures.json").open() as fh:
        data = json.load(fh)
    validate_document(data, FIXTURES_SCHEMA)
    return data


def _resolve_pairs(L: SubgroupLattice, pairs) -> list[tuple[int, int]]:
    return [(L.resolve_name(k), L.resolve_name(h)) for k, h in pairs]


def _require_catalog_group(name: str) -> SubgroupLattice:
    if name not in CATALOG_GROUPS:
        raise ValueError(f"no realizability data for group {name!r}; "
                         f"supported: {', '.join(CATALOG_GROUPS)}")
    return subgroup_lattice(make_group(name))


@functools.lru_cache(maxsize=None)
def catalog(name: str) -> tuple[RepCatalogEntry, ...]:
    """Nontrivial irreducible summands with their orbit pairs.

    K4 entries are derived from its cocyclic subgroups (one sign
    representation per index-2 kernel); Q8 and Sym3 entries are fixture data.
    """
    L = _require_catalog_group(name)
    raw = _fixture_data()["groups"][name]["catalog"]
    if raw == "derived":
        entries = []
        for s in range(L.n - 1):
            if not L.cocyclic[s]:
                continue
            quotient = L.group.order // L.order_of(s)
            gen = L.names[s].strip("<>").split(",")[0]
            entries.append(RepCatalogEntry(
                name, f"sigma_{gen}" if quotient == 2 else f"lambda_{gen}",
                ((s, L.full),), 1 if quotient == 2 else 2))
        return tuple(entries)
    entries = tuple(RepCatalogEntry(name, e["rep"], tuple(_resolve_pairs(L, e["orb"])),
                                    e["dim"]) for e in raw)
    for entry in entries:
        for k, h in entry.orb_pairs:
            if h != L.full or k == L.full:
                raise AssertionError(f"catalog orbit pair for {entry.rep} must join a "
                                     "proper subgroup to the whole group")
    return entries


@functools.lru_cache(maxsize=None)
def linisom_fixture(name: str) -> tuple[LinIsomFixtureRow, ...]:
    """Fixture table of isometries-map values, one row per universe.

    Every row is validated on load: the pair set must already be a transfer
    system, and it must be saturated.
    """
    L = _require_catalog_group(name)
    rows = []
    for row in _fixture_data()["groups"][name]["linisom"]:
        system = system_from_orbits(L, _resolve_pairs(L, row["pairs"]))
        if not is_saturated(system):
            raise AssertionError(f"fixture row {row['universe']} for {name} "
                                 "is not saturated")
        rows.append(LinIsomFixtureRow(name, tuple(row["universe"]), system))
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def unrealized_fixture(name: str) -> tuple[TransferSystem, ...]:
    """Orbit representatives of systems hit by neither realizability map."""
    L = _require_catalog_group(name)
    return tuple(system_from_orbits(L, _resolve_pairs(L, pairs))
                 for pairs in _fixture_data()["groups"][name]["unrealized_orbit_reps"])


# -- the embedding (Steiner-type) map -----------------------------------------

def _cyclic_lattice(n: int) -> SubgroupLattice:
    return subgroup_lattice(cyclic_group(n))


def _subgroup_of_order(L: SubgroupLattice, d: int) -> int:
    for s in range(L.n):
        if L.order_of(s) == d:
            return s
    raise ValueError(f"no subgroup of order {d} in {L.group.name}")


def steiner_cyclic(n: int, index_set) -> TransferSystem:
    """Embedding-map value on C_n for the universe with the given index set.

    Generated by (ker lambda(i), C_n) over i in the set; the kernel of the
    label-i rotation is the unique subgroup of order gcd(i, n).
    """
    I = _as_index_set(n, index_set)
    L = _cyclic_lattice(n)
    pairs = {(_subgroup_of_order(L, lambda_kernel_order(n, i)), L.full)
             for i in I.members}
    return generate(L, pairs)


def steiner_abelian(L, kernels=None) -> TransferSystem:
    """Embedding-map value generated by (H_i, G) over the given kernels.

    Accepts a CocyclicUniverseSpec, or a lattice plus an iterable of proper
    cocyclic subgroup indices.
    """
    if isinstance(L, CocyclicUniverseSpec):
        spec = L
    else:
        spec = CocyclicUniverseSpec(L, frozenset(kernels))
    return generate(spec.lattice,
                    [(s, spec.lattice.full) for s in sorted(spec.kernels)])


def steiner_image(target) -> list[TransferSystem]:
    """All embedding-map values: over an abelian lattice, or a catalog group.

    Abelian: every subset of proper cocyclic subgroups.  Catalog group:
    every subset of the irreducible summand catalog, generated from the
    union of their orbit pairs.  Deduplicated and sorted.
    """
    if isinstance(target, SubgroupLattice):
        if not target.group.is_abelian:
            raise ValueError(f"{target.group.name} is not abelian; "
                             "only catalog groups are supported beyond abelian ones")
        kernels = [s for s in range(target.n - 1) if target.cocyclic[s]]
        values = {steiner_abelian(target, combo)
                  for r in range(len(kernels) + 1)
                  for combo in itertools.combinations(kernels, r)}
    else:
        L = _require_catalog_group(target)
        reps = catalog(target)
        values = set()
        for r in range(len(reps) + 1):
            for combo in itertools.combinations(reps, r):
                pairs = [p for entry in combo for p in entry.orb_pairs]
                values.add(generate(L, pairs))
    return sorted(values, key=lambda t: t.key)


# -- the isometries map --------------------------------------------------------

def _as_index_set(n: int, index_set) -> CyclicUniverseIndexSet:
    if isinstance(index_set, CyclicUniverseIndexSet):
        if index_set.modulus != n:
            raise ValueError(f"index set has modulus {index_set.modulus}, expected {n}")
        return index_set
    return CyclicUniverseIndexSet.canonical(n, index_set)


def linisom_cyclic(n: int, index_set) -> TransferSystem:
    """Isometries-map value on C_n for the given index set.

    C_d -> C_e holds (d | e | n) iff the reduction of the index set mod e is
    invariant under translation by d.  The result is always saturated.
    """
    I = _as_index_set(n, index_set)
    L = _cyclic_lattice(n)
    pairs = []
    for k, h in L.proper_pairs:
        d, e = L.order_of(k), L.order_of(h)
        reduced = I.reduction(e)
        if {(x + d) % e for x in reduced} == reduced:
            pairs.append((k, h))
    T = system_from_orbits(L, pairs)
    assert is_saturated(T)
    return T


def linisom_image_cyclic(n: int, bound: int | None = None) -> list[TransferSystem]:
    """All isometries-map values on C_n, over every index set.

    Index sets are scanned as bitmask reductions per divisor, deduplicating
    on the vector of translation-invariance outcomes before any transfer
    system is materialized.
    """
    limit = bound if bound is not None else env_search_bound(1 << 20)
    if index_set_count(n) > limit:
        raise SearchBoundExceeded(
            f"C{n} has {index_set_count(n)} universes, above the search bound {limit}")
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    div_pos = {d: i for i, d in enumerate(divisors)}
    order_pairs = [(d, e) for d in divisors for e in divisors if d < e and e % d == 0]
    classes = []
    seen_cls = set()
    for i in range(1, n // 2 + 1):
        cls = frozenset({i, (n - i) % n})
        if cls not in seen_cls:
            seen_cls.add(cls)
            classes.append([0] * len(divisors))
            for e_pos, e in enumerate(divisors):
                for x in cls:
                    classes[-1][e_pos] |= 1 << (x % e)
    signatures: set[int] = set()

    def scan(ci: int, masks: list[int]) -> None:
        if ci == len(classes):
            sig = 0
            for idx, (d, e) in enumerate(order_pairs):
                m = masks[div_pos[e]]
                if ((m << d | m >> (e - d)) & ((1 << e) - 1)) == m:
                    sig |= 1 << idx
            signatures.add(sig)
            return
        scan(ci + 1, masks)
        scan(ci + 1, [m | c for m, c in zip(masks, classes[ci])])

    scan(0, [1] * len(divisors))
    L = _cyclic_lattice(n)
    values = set()
    for sig in signatures:
        pairs = [(_subgroup_of_order(L, d), _subgroup_of_order(L, e))
                 for idx, (d, e) in enumerate(order_pairs) if sig >> idx & 1]
        values.add(system_from_orbits(L, pairs))
    return sorted(values, key=lambda t: t.key)


def linisom_image_fixture(name: str) -> list[TransferSystem]:
    """Distinct isometries-map values for a fixture group."""
    values = {row.system for row in linisom_fixture(name)}
    return sorted(values, key=lambda t: t.key)


# -- constructing realizing universes ------------------------------------------

def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def realize_saturated_cpn(p: int, n: int, T: TransferSystem) -> CyclicUniverseIndexSet:
    """Index set whose isometries-map value is the given saturated system.

    Built from the exponents k_i of T's irreducible relations as all signed
    sums +-(a_1 p^{k_1} + ... + a_m p^{k_m}) with 0 <= a_i < p.  The round
    trip through linisom_cyclic is checked before returning.
    """
    modulus = p ** n
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if T.lattice.group.order != modulus:
        raise ValueError(f"system lives on {T.lattice.group.name}, expected C{modulus}")
    if not is_saturated(T):
        raise ValueError("system is not saturated; isometries-map values always are")
    levels = sorted(round(math.log(T.lattice.order_of(k), p))
                    for k, h in irreducible_pairs(T))
    members = {0}
    for digits in itertools.product(range(p), repeat=len(levels)):
        total = sum(a * p ** k for a, k in zip(digits, levels))
        members.add(total % modulus)
        members.add(-total % modulus)
    I = CyclicUniverseIndexSet.canonical(modulus, members)
    back = linisom_cyclic(modulus, I)
    if back != T:
        raise AssertionError(f"round trip failed for {T!r} with {I!r}")
    return I


def _shape_of_cpq(T: TransferSystem, p: int, q: int) -> str:
    by_order = {(T.lattice.order_of(k), T.lattice.order_of(h)) for k, h in T.pairs()}
    shapes = {
        frozenset(): "trivial",
        frozenset({(1, p)}): "indp",
        frozenset({(1, q)}): "indq",
        frozenset({(1, p), (1, q)}): "indpq",
        frozenset({(1, q), (p, p * q)}): "indpqp",
        frozenset({(1, p), (q, p * q)}): "indpqq",
        frozenset({(1, p), (1, q), (1, p * q), (p, p * q), (q, p * q)}): "complete",
    }
    try:
        return shapes[frozenset(by_order)]
    except KeyError:
        raise AssertionError(f"unexpected saturated shape {sorted(by_order)}") from None


def realize_saturated_cpq(p: int, q: int, T: TransferSystem):
    """Index set realizing a saturated system on C_pq, or a NotRealizable tag.

    The single-edge system into C_q is out of reach when p <= 3, and the one
    into C_p additionally when (p, q) = (2, 3); everything else comes from an
    explicit index-set table, verified by round trip.  If the table value
    ever failed the round trip, the miss would be logged and an exhaustive
    search used instead.
    """
    if not (_is_prime(p) and _is_prime(q) and p < q):
        raise ValueError(f"need primes p < q, got ({p}, {q})")
    if T.lattice.group.order != p * q:
        raise ValueError(f"system lives on {T.lattice.group.name}, expected C{p * q}")
    if not is_saturated(T):
        raise ValueError("system is not saturated; isometries-map values always are")
    n = p * q
    shape = _shape_of_cpq(T, p, q)
    if shape == "indq" and p <= 3:
        return NotRealizable("indq", f"the single transfer 1 -> C{q} needs p > 3; "
                                     f"here p = {p}")
    if shape == "indp" and (p, q) == (2, 3):
        return NotRealizable("indp", "the single transfer 1 -> C2 is out of reach "
                                     "over C6")
    table = {
        "trivial": {0},
        "indp": set(range(-(p // 2), p // 2 + 1)),
        "indpq": set(range(-(q // 2), q // 2 + 1)),
        "indpqp": {p * t for t in range(q)},
        "indpqq": {q * t for t in range(p)},
        "indq": {0, 1, -1} | {p * t for t in range(q)},
        "complete": set(range(n)),
    }
    I = CyclicUniverseIndexSet.canonical(n, table[shape])
    if linisom_cyclic(n, I) == T:
        return I
    log.warning("table index set %r missed shape %s on C%d; falling back to search",
                I, shape, n)
    for J in all_index_sets(n):
        if linisom_cyclic(n, J) == T:
            return J
    raise AssertionError(f"no index set realizes {T!r}")


def minimal_steiner_universe(L: SubgroupLattice, k: int, h: int) -> list[tuple[int, ...]]:
    """All minimal cocyclic-kernel sets whose embedding map admits K -> H.

    Returns every set {H_1, ..., H_m} of distinct proper cocyclic subgroups
    with H n H_1 n ... n H_m = K such that omitting any one H_i strictly
    enlarges the intersection.
    """
    if not L.group.is_abelian:
        raise ValueError(f"{L.group.name} is not abelian")
    if k == h or not L.includes[k][h]:
        raise ValueError(f"need {L.names[k]} strictly below {L.names[h]}")
    candidates = [s for s in range(L.n - 1) if L.cocyclic[s]]

    def intersect_with_h(combo) -> int:
        acc = h
        for s in combo:
            acc = L.intersect[acc][s]
        return acc

    out = []
    for r in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, r):
            if intersect_with_h(combo) != k:
                continue
            if all(intersect_with_h(combo[:i] + combo[i + 1:]) != k
                   for i in range(r)):
                out.append(tuple(combo))
    return sorted(out, key=lambda c: (len(c), c))
