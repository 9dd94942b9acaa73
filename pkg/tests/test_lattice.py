"""Subgroup lattice enumeration, conjugation data, automorphisms."""

import itertools

import pytest

from trlat.groups import (abelian_group, cyclic_group, dihedral_group, klein_group,
                          make_group, quaternion_group, symmetric_group)
from trlat.lattice import automorphisms, pair_orbit_partition, subgroup_lattice


def brute_force_subgroups(G):
    """Every subset containing the identity that is closed under the table."""
    elements = list(range(G.order))
    out = set()
    for r in range(G.order + 1):
        for combo in itertools.combinations(elements, r):
            s = set(combo)
            if G.identity not in s:
                continue
            if all(G.compose(a, b) in s for a in s for b in s):
                out.add(frozenset(s))
    return out


@pytest.mark.parametrize("G", [cyclic_group(12), symmetric_group(3), quaternion_group(),
                               klein_group(), dihedral_group(10), abelian_group((3, 3))],
                         ids=lambda g: g.name)
def test_subgroups_match_brute_force(G):
    L = subgroup_lattice(G)
    assert set(L.subgroups) == brute_force_subgroups(G)


@pytest.mark.parametrize("name,count", [("C4", 3), ("Q8", 6), ("Sym4", 30), ("K4", 5)])
def test_subgroup_counts(name, count):
    assert subgroup_lattice(make_group(name)).n == count


def test_canonical_order_and_determinism():
    L1 = subgroup_lattice(make_group("Q8"))
    orders = [L1.order_of(s) for s in range(L1.n)]
    assert orders == sorted(orders)
    assert L1.names == ("1", "<-1>", "<i>", "<j>", "<k>", "Q8")
    members = [tuple(sorted(s)) for s in L1.subgroups]
    for a, b in zip(members, members[1:]):
        assert (len(a), a) < (len(b), b)


def test_cyclic_subgroup_count_is_divisor_count():
    for n in (1, 2, 6, 8, 12, 16, 24):
        L = subgroup_lattice(cyclic_group(n))
        assert L.n == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_q8_all_normal():
    L = subgroup_lattice(quaternion_group())
    assert all(L.normal)


def test_conjugation_preserves_inclusion():
    for G in (symmetric_group(3), quaternion_group(), symmetric_group(4)):
        L = subgroup_lattice(G)
        for g in range(G.order):
            perm = L.conjugate[g]
            assert sorted(perm) == list(range(L.n))
            for s in range(L.n):
                for t in range(L.n):
                    assert L.includes[s][t] == L.includes[perm[s]][perm[t]]


def test_intersection_is_the_meet():
    L = subgroup_lattice(symmetric_group(3))
    for s in range(L.n):
        for t in range(L.n):
            m = L.intersect[s][t]
            assert L.subgroups[m] == L.subgroups[s] & L.subgroups[t]
            assert L.includes[m][s] and L.includes[m][t]


def test_cocyclicity():
    LQ = subgroup_lattice(quaternion_group())
    assert [LQ.names[s] for s in range(LQ.n) if LQ.cocyclic[s]] == \
        ["<i>", "<j>", "<k>", "Q8"]
    LK = subgroup_lattice(klein_group())
    assert [LK.names[s] for s in range(LK.n) if LK.cocyclic[s]] == \
        ["<a>", "<b>", "<c>", "K4"]
    # all subgroups of a cyclic group are cocyclic
    LC = subgroup_lattice(cyclic_group(12))
    assert all(LC.cocyclic)
    LS = subgroup_lattice(symmetric_group(3))
    assert [LS.names[s] for s in range(LS.n) if LS.cocyclic[s]] == ["<(123)>", "Sym3"]


def test_pair_orbits_abelian_singletons():
    L = subgroup_lattice(klein_group())
    orbits = pair_orbit_partition(L)
    assert len(orbits) == 7
    assert all(len(orbit) == 1 for orbit in orbits)


def test_pair_orbits_q8():
    L = subgroup_lattice(quaternion_group())
    orbits = pair_orbit_partition(L)
    assert len(orbits) == 12 == len(L.proper_pairs)
    assert all(len(orbit) == 1 for orbit in orbits)


def test_sym4_double_transposition_edges():
    """Two conjugacy classes of inclusions of a double-transposition C2 in D8."""
    G = symmetric_group(4)
    L = subgroup_lattice(G)
    dt = L.index_of[G.closure([G.element_names.index("(12)(34)")])]
    dt_class = L.class_of[dt]
    restricted = [orbit for orbit in L.pair_orbits
                  if L.class_of[orbit[0][0]] == dt_class and L.order_of(orbit[0][1]) == 8]
    assert len(restricted) == 2
    assert sorted(len(o) for o in restricted) == [3, 6]


def brute_force_automorphisms(G):
    others = [x for x in range(G.order) if x != G.identity]
    out = []
    for images in itertools.permutations(others):
        phi = {G.identity: G.identity}
        phi.update(dict(zip(others, images)))
        if all(phi[G.compose(a, b)] == G.compose(phi[a], phi[b])
               for a in range(G.order) for b in range(G.order)):
            out.append(tuple(phi[x] for x in range(G.order)))
    return sorted(out)


@pytest.mark.parametrize("G", [klein_group(), cyclic_group(5), cyclic_group(6),
                               symmetric_group(3), quaternion_group()],
                         ids=lambda g: g.name)
def test_automorphisms_match_brute_force(G):
    assert automorphisms(G) == brute_force_automorphisms(G)


def test_automorphism_counts():
    assert len(automorphisms(klein_group())) == 6
    assert len(automorphisms(cyclic_group(5))) == 4
    assert len(automorphisms(quaternion_group())) == 24


def test_q8_aut_acts_through_order_6_quotient():
    G = quaternion_group()
    L = subgroup_lattice(G)
    induced = {L.subgroup_perm(sigma) for sigma in automorphisms(G)}
    assert len(induced) == 6


def test_automorphisms_closed_under_composition_and_inverse():
    G = symmetric_group(3)
    auts = set(automorphisms(G))
    for a in auts:
        inv = [0] * G.order
        for x, y in enumerate(a):
            inv[y] = x
        assert tuple(inv) in auts
        for b in auts:
            assert tuple(a[b[x]] for x in range(G.order)) in auts


def test_automorphisms_permute_subgroup_classes():
    G = symmetric_group(4)
    L = subgroup_lattice(G)
    for sigma in automorphisms(G):
        perm = L.subgroup_perm(sigma)
        for s in range(L.n):
            size = sum(1 for t in range(L.n) if L.class_of[t] == L.class_of[s])
            size2 = sum(1 for t in range(L.n)
                        if L.class_of[t] == L.class_of[perm[s]])
            assert size == size2


def test_name_resolution():
    L = subgroup_lattice(quaternion_group())
    assert L.resolve_name("<i>") == 2
    assert L.resolve_name("Q8") == L.full
    with pytest.raises(KeyError, match="no subgroup named"):
        L.resolve_name("<x>")
