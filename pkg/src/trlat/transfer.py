"""Transfer systems: relation closure, validation, enumeration, lattice ops.

A transfer system is encoded as one bitmask row per subgroup: bit h of
rows[k] means the relation K_k -> H_h holds (canonical lattice indices).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from .lattice import SubgroupLattice


class TransferSystemError(ValueError):
    """Raised for relations that violate the transfer-system axioms."""


class SearchBoundExceeded(ValueError):
    """Raised when an enumeration would exceed the configured search bound."""


def env_search_bound(default: int) -> int:
    raw = os.environ.get("TL_SEARCH_BOUND")
    return int(raw) if raw else default


@dataclass(frozen=True)
class Violation:
    axiom: str
    pair: tuple[int, int]
    forced_by: tuple[int, int] | None = None

    def describe(self, L: SubgroupLattice) -> str:
        k, h = self.pair
        msg = f"{self.axiom} violation at ({L.names[k]}, {L.names[h]})"
        if self.forced_by is not None:
            a, b = self.forced_by
            msg += f" forced by ({L.names[a]}, {L.names[b]})"
        return msg


@dataclass(frozen=True)
class RelationSet:
    """A set of subgroup pairs refining inclusion, over a fixed lattice."""

    lattice: SubgroupLattice
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        for k, h in self.pairs:
            if not self.lattice.includes[k][h]:
                raise TransferSystemError(
                    f"pair ({self.lattice.names[k]}, {self.lattice.names[h]}) "
                    "does not refine inclusion")


class TransferSystem:
    """An immutable transfer system over a subgroup lattice."""

    __slots__ = ("lattice", "rows", "_hash")

    def __init__(self, lattice: SubgroupLattice, rows: tuple[int, ...]):
        self.lattice = lattice
        self.rows = rows
        self._hash = hash((lattice.group.name, lattice.n, rows))

    @classmethod
    def diagonal(cls, lattice: SubgroupLattice) -> "TransferSystem":
        return cls(lattice, tuple(1 << k for k in range(lattice.n)))

    @classmethod
    def maximum(cls, lattice: SubgroupLattice) -> "TransferSystem":
        rows = []
        for k in range(lattice.n):
            bits = 1 << k
            for h in range(lattice.n):
                if lattice.includes[k][h]:
                    bits |= 1 << h
            rows.append(bits)
        return cls(lattice, tuple(rows))

    @classmethod
    def from_pairs(cls, lattice: SubgroupLattice, pairs) -> "TransferSystem":
        """Wrap an explicit pair set; raises unless it is already closed."""
        rows = [1 << k for k in range(lattice.n)]
        for k, h in pairs:
            rows[k] |= 1 << h
        violations = _violations(lattice, tuple(rows))
        if violations:
            raise TransferSystemError(
                "not a transfer system: "
                + "; ".join(v.describe(lattice) for v in violations))
        return cls(lattice, tuple(rows))

    def contains(self, k: int, h: int) -> bool:
        return bool(self.rows[k] >> h & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """Nontrivial related pairs, sorted."""
        return [(k, h) for k in range(self.lattice.n) for h in range(self.lattice.n)
                if k != h and self.rows[k] >> h & 1]

    def pair_count(self) -> int:
        return len(self.pairs())

    @property
    def key(self) -> str:
        """Row-major bit string; the deduplication and sort key."""
        n = self.lattice.n
        return "".join("1" if self.rows[k] >> h & 1 else "0"
                       for k in range(n) for h in range(n))

    def refines(self, other: "TransferSystem") -> bool:
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    def relabel(self, perm: tuple[int, ...]) -> "TransferSystem":
        """Push the system forward along a subgroup-index permutation."""
        rows = [0] * self.lattice.n
        for k in range(self.lattice.n):
            bits = self.rows[k]
            h = 0
            while bits:
                if bits & 1:
                    rows[perm[k]] |= 1 << perm[h]
                bits >>= 1
                h += 1
        return TransferSystem(self.lattice, tuple(rows))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TransferSystem) and self.rows == other.rows
                and (self.lattice is other.lattice
                     or self.lattice.fingerprint == other.lattice.fingerprint))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        named = [f"({self.lattice.names[k]}->{self.lattice.names[h]})"
                 for k, h in self.pairs()]
        return f"TransferSystem({self.lattice.group.name}: {' '.join(named) or 'diagonal'})"


# -- validation ---------------------------------------------------------------

def _violations(L: SubgroupLattice, rows: tuple[int, ...]) -> list[Violation]:
    out: list[Violation] = []
    n = L.n
    for k in range(n):
        if not rows[k] >> k & 1:
            out.append(Violation("reflexivity", (k, k)))
        bits = rows[k]
        for h in range(n):
            if bits >> h & 1 and not L.includes[k][h]:
                out.append(Violation("refines-inclusion", (k, h)))
    for k in range(n):
        for h in range(n):
            if k == h or not rows[k] >> h & 1 or not L.includes[k][h]:
                continue
            for g in range(L.group.order):
                ck, ch = L.conjugate[g][k], L.conjugate[g][h]
                if not rows[ck] >> ch & 1:
                    out.append(Violation("conjugation", (ck, ch), (k, h)))
            for l in range(n):
                if L.includes[l][h]:
                    m = L.intersect[l][k]
                    if not rows[m] >> l & 1:
                        out.append(Violation("restriction", (m, l), (k, h)))
            for h2 in range(n):
                if rows[h] >> h2 & 1 and not rows[k] >> h2 & 1:
                    out.append(Violation("transitivity", (k, h2), (k, h)))
    # deduplicate, preserving first-seen order
    seen, unique = set(), []
    for v in out:
        if (v.axiom, v.pair) not in seen:
            seen.add((v.axiom, v.pair))
            unique.append(v)
    return unique


def validate(L: SubgroupLattice, relation) -> list[Violation]:
    """Check the transfer-system axioms on a pair set; [] means valid."""
    rows = [1 << k for k in range(L.n)]
    if isinstance(relation, RelationSet):
        relation = relation.pairs
    for k, h in relation:
        rows[k] |= 1 << h
    return _violations(L, tuple(rows))


def validate_matrix(L: SubgroupLattice, matrix) -> list[Violation]:
    """Check the axioms on a full boolean relation matrix.

    The matrix must be square of the lattice dimension; a mismatch raises
    rather than being reported as an axiom violation.
    """
    matrix = [list(row) for row in matrix]
    if len(matrix) != L.n or any(len(row) != L.n for row in matrix):
        raise ValueError(f"matrix dimensions {len(matrix)}x"
                         f"{len(matrix[0]) if matrix else 0} do not match "
                         f"lattice size {L.n}")
    return validate(L, [(k, h) for k in range(L.n) for h in range(L.n)
                        if matrix[k][h] and k != h])


# -- generation (smallest transfer system containing a relation) -------------

def _add_pair_closure(L: SubgroupLattice, rows: list[int], pairs) -> None:
    """Close the given pairs under conjugation, then restriction, into rows."""
    conj_closed = set()
    for k, h in pairs:
        if not L.includes[k][h]:
            raise TransferSystemError(
                f"pair ({L.names[k]}, {L.names[h]}) does not refine inclusion")
        for g in range(L.group.order):
            conj_closed.add((L.conjugate[g][k], L.conjugate[g][h]))
    for k, h in conj_closed:
        rows[k] |= 1 << h
        for l in range(L.n):
            if L.includes[l][h]:
                rows[L.intersect[l][k]] |= 1 << l


def _transitive_close(rows: list[int]) -> None:
    n = len(rows)
    for m in range(n):
        bit = 1 << m
        rm = rows[m]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rm


def generate(L: SubgroupLattice, relation) -> TransferSystem:
    """The smallest transfer system containing the given relation.

    Closes under conjugation, then restriction, then takes the
    reflexive-transitive closure.  Pairs that do not refine inclusion are
    rejected with the offending pair named.
    """
    if isinstance(relation, RelationSet):
        relation = relation.pairs
    rows = [1 << k for k in range(L.n)]
    _add_pair_closure(L, rows, relation)
    _transitive_close(rows)
    T = TransferSystem(L, tuple(rows))
    bad = _violations(L, T.rows)
    if bad:  # the closure construction guarantees this never fires
        raise AssertionError("closure produced an invalid system: "
                             + bad[0].describe(L))
    return T


def _extend(T: TransferSystem, pair: tuple[int, int]) -> TransferSystem:
    """generate(T's pairs + pair), reusing the fact that T is already closed."""
    L = T.lattice
    rows = list(T.rows)
    _add_pair_closure(L, rows, [pair])
    _transitive_close(rows)
    return TransferSystem(L, tuple(rows))


# -- lattice operations on Tr(G) ---------------------------------------------

def _require_same_lattice(T1: TransferSystem, T2: TransferSystem) -> None:
    if T1.lattice is not T2.lattice and T1.lattice.fingerprint != T2.lattice.fingerprint:
        raise ValueError("transfer systems live over different lattices")


def meet(T1: TransferSystem, T2: TransferSystem) -> TransferSystem:
    """Pairwise intersection; always a transfer system."""
    _require_same_lattice(T1, T2)
    rows = tuple(a & b for a, b in zip(T1.rows, T2.rows))
    assert not _violations(T1.lattice, rows)
    return TransferSystem(T1.lattice, rows)


def join(T1: TransferSystem, T2: TransferSystem) -> TransferSystem:
    """Smallest transfer system containing both."""
    _require_same_lattice(T1, T2)
    rows = [a | b for a, b in zip(T1.rows, T2.rows)]
    _transitive_close(rows)
    T = TransferSystem(T1.lattice, tuple(rows))
    bad = _violations(T1.lattice, T.rows)
    if bad:
        raise AssertionError("join produced an invalid system: " + bad[0].describe(T1.lattice))
    return T


def is_saturated(T: TransferSystem) -> bool:
    """Horn filling: K -> H forces K -> L -> H through every K <= L <= H."""
    L = T.lattice
    for k, h in T.pairs():
        for l in range(L.n):
            if l in (k, h) or not (L.includes[k][l] and L.includes[l][h]):
                continue
            if not (T.contains(k, l) and T.contains(l, h)):
                return False
    return True


def irreducible_pairs(T: TransferSystem) -> list[tuple[int, int]]:
    """Related pairs (K, H) with K maximal proper in H."""
    L = T.lattice
    out = []
    for k, h in T.pairs():
        if not any(l not in (k, h) and L.includes[k][l] and L.includes[l][h]
                   for l in range(L.n)):
            out.append((k, h))
    return out


# -- enumeration ---------------------------------------------------------------

def enumerate_all(L: SubgroupLattice, bound: int | None = None) -> list[TransferSystem]:
    """Every transfer system over L, sorted by deduplication key.

    Seeds with the diagonal system and repeatedly extends each known system
    by one missing inclusion pair, inserting the generated result until a
    fixpoint; every system is generated by its own pairs, so this reaches
    all of Tr(G).  Refuses if the number of inclusion-pair orbits exceeds
    the search bound (default 24, overridable via TL_SEARCH_BOUND).
    """
    limit = bound if bound is not None else env_search_bound(24)
    if len(L.pair_orbits) > limit:
        raise SearchBoundExceeded(
            f"{L.group.name} has {len(L.pair_orbits)} inclusion-pair orbits, "
            f"above the search bound {limit}")
    diag = TransferSystem.diagonal(L)
    seen = {diag.rows: diag}
    queue = [diag]
    while queue:
        T = queue.pop()
        for k, h in L.proper_pairs:
            if T.contains(k, h):
                continue
            N = _extend(T, (k, h))
            if N.rows not in seen:
                seen[N.rows] = N
                queue.append(N)
    return sorted(seen.values(), key=lambda t: t.key)


def aut_orbits(systems, automorphism_perms):
    """Orbit partition of systems under relabeling by group automorphisms.

    Returns (orbits, profile): orbits as lists of systems, profile as
    (orbit size, count) sorted by size descending.
    """
    if not systems:
        return [], []
    L = systems[0].lattice
    sub_perms = sorted({L.subgroup_perm(sigma) for sigma in automorphism_perms})
    index = {T.rows: i for i, T in enumerate(systems)}
    seen = set()
    orbits = []
    for T in systems:
        if T.rows in seen:
            continue
        orbit_rows = {T.relabel(p).rows for p in sub_perms}
        if not orbit_rows <= set(index):
            raise ValueError("system list is not closed under the automorphism action")
        seen |= orbit_rows
        orbits.append(sorted((systems[index[r]] for r in orbit_rows), key=lambda t: t.key))
    sizes: dict[int, int] = {}
    for orbit in orbits:
        sizes[len(orbit)] = sizes.get(len(orbit), 0) + 1
    profile = sorted(sizes.items(), key=lambda sc: -sc[0])
    return orbits, profile


# -- closed forms for generated systems ---------------------------------------

def _check_conjugation_closed(L: SubgroupLattice, family, what: str) -> None:
    fam = set(family)
    for s in fam:
        for g in range(L.group.order):
            if L.conjugate[g][s] not in fam:
                raise ValueError(f"{what} family is not closed under conjugation "
                                 f"(misses a conjugate of {L.names[s]})")


def closed_form_normal_source(L: SubgroupLattice, k: int, hs) -> TransferSystem:
    """<(K, H_i)> for normal K below a conjugation-closed family of H_i.

    Equals the diagonal plus every (M n K, M) with M below some H_i.
    """
    hs = sorted(set(hs))
    if not L.normal[k]:
        raise ValueError(f"source {L.names[k]} is not normal")
    for h in hs:
        if not L.includes[k][h]:
            raise ValueError(f"source {L.names[k]} is not contained in {L.names[h]}")
    _check_conjugation_closed(L, hs, "target")
    rows = [1 << s for s in range(L.n)]
    for h in hs:
        for m in range(L.n):
            if L.includes[m][h]:
                rows[L.intersect[m][k]] |= 1 << m
    T = TransferSystem(L, tuple(rows))
    bad = _violations(L, T.rows)
    if bad:
        raise AssertionError("closed form invalid: " + bad[0].describe(L))
    return T


def closed_form_normal_target(L: SubgroupLattice, ks, h: int) -> TransferSystem:
    """<(K_i, H)> for a conjugation-closed family of K_i below a normal H.

    Equals the diagonal plus every (M n K_{i_1} n ... n K_{i_m}, M)
    with M below H.
    """
    ks = sorted(set(ks))
    if not L.normal[h]:
        raise ValueError(f"target {L.names[h]} is not normal")
    for k in ks:
        if not L.includes[k][h]:
            raise ValueError(f"source {L.names[k]} is not contained in {L.names[h]}")
    _check_conjugation_closed(L, ks, "source")
    meets = set(ks)
    frontier = set(ks)
    while frontier:
        new = {L.intersect[a][b] for a in frontier for b in meets} - meets
        meets |= new
        frontier = new
    rows = [1 << s for s in range(L.n)]
    for m in range(L.n):
        if L.includes[m][h]:
            for kk in meets:
                rows[L.intersect[m][kk]] |= 1 << m
    T = TransferSystem(L, tuple(rows))
    bad = _violations(L, T.rows)
    if bad:
        raise AssertionError("closed form invalid: " + bad[0].describe(L))
    return T
