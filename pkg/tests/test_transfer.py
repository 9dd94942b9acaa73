"""Relation closure, validation, lattice operations, and enumeration of Tr(G)."""

import random

import pytest

from trlat.groups import abelian_group, cyclic_group, make_group
from trlat.lattice import automorphisms, subgroup_lattice
from trlat.transfer import (RelationSet, SearchBoundExceeded, TransferSystem,
                            TransferSystemError, aut_orbits,
                            closed_form_normal_source, closed_form_normal_target,
                            enumerate_all, generate, irreducible_pairs, is_saturated,
                            join, meet, validate, validate_matrix)


def L_(name):
    return subgroup_lattice(make_group(name))


def named(T):
    return {(T.lattice.names[k], T.lattice.names[h]) for k, h in T.pairs()}


# -- validate -------------------------------------------------------------------

def test_diagonal_and_maximum_validate():
    L = L_("C4")
    assert validate(L, []) == []
    assert validate(L, L.proper_pairs) == []


def test_restriction_violation_witness():
    L = L_("C4")
    # 1 -> C4 without 1 -> C2: restriction along C2 is missing
    bad = validate(L, [(0, 2)])
    assert any(v.axiom == "restriction" and v.pair == (0, 1) for v in bad)


def test_validate_matrix_dimension_mismatch():
    L = L_("C4")
    with pytest.raises(ValueError, match="dimension"):
        validate_matrix(L, [[1, 0], [0, 1]])
    matrix = [[k == h or (k, h) == (0, 1) for h in range(L.n)] for k in range(L.n)]
    assert validate_matrix(L, matrix) == []


def test_relation_set_rejects_non_inclusion():
    L = L_("C6")
    with pytest.raises(TransferSystemError, match="refine inclusion"):
        RelationSet(L, frozenset({(1, 2)}))  # C2 is not below C3


# -- generate -------------------------------------------------------------------

def test_generate_empty_is_diagonal():
    L = L_("C8")
    assert generate(L, []) == TransferSystem.diagonal(L)


def test_generate_rejects_non_inclusion_pair():
    L = L_("C6")
    with pytest.raises(TransferSystemError, match=r"\(C2, C3\)"):
        generate(L, [(1, 2)])


def test_generate_c8_single_pair():
    L = L_("C8")
    T = generate(L, [(0, 2)])  # 1 -> C4
    assert named(T) == {("1", "C2"), ("1", "C4")}


def test_generate_sym3_transposition_to_top():
    L = L_("Sym3")
    t12 = L.resolve_name("<(12)>")
    T = generate(L, [(t12, L.full)])
    transpositions = ["<(12)>", "<(13)>", "<(23)>"]
    expected = {("1", t) for t in transpositions}
    expected |= {(t, "Sym3") for t in transpositions}
    expected |= {("1", "<(123)>"), ("1", "Sym3")}
    assert named(T) == expected
    # conjugation closure puts the other transpositions' transfers in too
    t13 = L.resolve_name("<(13)>")
    assert T.contains(t13, L.full)


def test_generate_monotone_and_idempotent():
    rng = random.Random(7)
    for name in ("C8", "K4", "Sym3", "Q8"):
        L = L_(name)
        for _ in range(30):
            small = rng.sample(L.proper_pairs, rng.randint(0, len(L.proper_pairs) // 2))
            extra = rng.sample(L.proper_pairs, rng.randint(0, 2))
            T1 = generate(L, small)
            T2 = generate(L, small + extra)
            assert T1.refines(T2)
            assert generate(L, T1.pairs()) == T1


@pytest.mark.parametrize("name", ["C4", "C8", "C6", "K4", "Sym3", "Q8"])
def test_generate_equals_intersection_oracle(name):
    """<R> is the meet of every enumerated system containing R."""
    L = L_(name)
    systems = enumerate_all(L)
    rng = random.Random(11)
    for _ in range(40):
        R = rng.sample(L.proper_pairs, rng.randint(0, min(4, len(L.proper_pairs))))
        T = generate(L, R)
        rows = TransferSystem.maximum(L).rows
        for S in systems:
            if all(S.contains(k, h) for k, h in R):
                rows = tuple(a & b for a, b in zip(rows, S.rows))
        assert TransferSystem(L, rows) == T


def test_bound_property_normal_target():
    """Pairs aimed inside a normal subgroup stay inside it after closure."""
    L = L_("Q8")
    N = L.resolve_name("<i>")
    inside = [(k, h) for k, h in L.proper_pairs if L.includes[h][N]]
    T = generate(L, inside)
    assert all(L.includes[h][N] for k, h in T.pairs())


def test_bound_property_normal_source():
    """Pairs sourced above a normal subgroup never land inside it."""
    L = L_("Q8")
    N = L.resolve_name("<-1>")
    above = [(k, h) for k, h in L.proper_pairs if L.includes[N][k]]
    T = generate(L, above)
    assert all(not L.includes[h][N] for k, h in T.pairs())


def test_intersection_closure_of_sources():
    """K1 -> H and K2 -> H force (K1 n K2) -> H in any valid system."""
    for name in ("Q8", "K4", "Sym3"):
        L = L_(name)
        for T in enumerate_all(L):
            for k1, h in T.pairs():
                for k2, _ in [(k, hh) for k, hh in T.pairs() if hh == h]:
                    assert T.contains(L.intersect[k1][k2], h)


# -- saturation -----------------------------------------------------------------

def test_saturation_examples():
    L = L_("C4")
    assert is_saturated(TransferSystem.diagonal(L))
    assert not is_saturated(generate(L, [(0, 1), (0, 2)]))  # missing C2 -> C4
    assert is_saturated(generate(L, [(1, 2)]))


def test_saturated_regenerate_from_irreducibles():
    for name in ("C8", "K4", "Sym3", "Q8", "C27"):
        L = L_(name)
        for T in enumerate_all(L):
            if is_saturated(T):
                assert generate(L, irreducible_pairs(T)) == T


# -- meet / join ----------------------------------------------------------------

def test_meet_join_identity_laws():
    L = L_("C6")
    top = TransferSystem.maximum(L)
    bottom = TransferSystem.diagonal(L)
    for T in enumerate_all(L):
        assert meet(T, top) == T
        assert join(bottom, T) == T


def test_join_forces_transitivity():
    for p in (2, 3):
        L = subgroup_lattice(cyclic_group(p * p))
        t1 = generate(L, [(0, 1)])
        t2 = generate(L, [(1, 2)])
        assert join(t1, t2) == TransferSystem.maximum(L)


def test_meet_join_are_lattice_ops():
    L = L_("K4")
    systems = enumerate_all(L)
    rng = random.Random(3)
    pool = set(systems)
    for _ in range(60):
        a, b = rng.sample(systems, 2)
        m, j = meet(a, b), join(a, b)
        assert m in pool and j in pool
        assert m.refines(a) and m.refines(b)
        assert a.refines(j) and b.refines(j)
        for c in rng.sample(systems, 6):
            if c.refines(a) and c.refines(b):
                assert c.refines(m)
            if a.refines(c) and b.refines(c):
                assert j.refines(c)


def test_lattice_mismatch_rejected():
    with pytest.raises(ValueError, match="different lattices"):
        meet(TransferSystem.diagonal(L_("C4")), TransferSystem.diagonal(L_("C6")))


# -- enumeration ----------------------------------------------------------------

@pytest.mark.parametrize("name,count", [
    ("C1", 1), ("C2", 2), ("C3", 2), ("C4", 5), ("C9", 5), ("C8", 14), ("C27", 14),
    ("C6", 10), ("C15", 10), ("K4", 19), ("Sym3", 9), ("Q8", 68), ("D10", 9),
    ("D6", 9),
])
def test_tr_counts(name, count):
    assert len(enumerate_all(L_(name))) == count


def test_rank_two_formula():
    for p in (2, 3):
        L = subgroup_lattice(abelian_group((p, p)))
        assert len(enumerate_all(L)) == 2 ** (p + 2) + p + 1


def test_enumeration_sorted_unique_closed():
    L = L_("Q8")
    systems = enumerate_all(L)
    keys = [T.key for T in systems]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    pool = set(systems)
    rng = random.Random(5)
    for _ in range(40):
        a, b = rng.sample(systems, 2)
        assert meet(a, b) in pool and join(a, b) in pool
    perms = {L.subgroup_perm(s) for s in automorphisms(L.group)}
    for T in rng.sample(systems, 10):
        for p in perms:
            assert T.relabel(p) in pool


def test_enumeration_bound_refusal():
    L = L_("Sym4")
    with pytest.raises(SearchBoundExceeded, match="34"):
        enumerate_all(L)


def test_env_bound_override(monkeypatch):
    monkeypatch.setenv("TL_SEARCH_BOUND", "5")
    with pytest.raises(SearchBoundExceeded):
        enumerate_all(L_("Q8"))
    monkeypatch.setenv("TL_SEARCH_BOUND", "40")
    L = L_("Q8")
    assert len(enumerate_all(L)) == 68


# -- orbit partitions -----------------------------------------------------------

def test_q8_orbit_profile():
    L = L_("Q8")
    orbits, profile = aut_orbits(enumerate_all(L), automorphisms(L.group))
    assert len(orbits) == 29
    assert profile == [(6, 1), (3, 17), (1, 11)]


def test_k4_orbit_count():
    L = L_("K4")
    orbits, _ = aut_orbits(enumerate_all(L), automorphisms(L.group))
    assert len(orbits) == 9


def test_diagonal_is_a_fixed_point():
    for name in ("K4", "Q8", "Sym3"):
        L = L_(name)
        orbits, _ = aut_orbits(enumerate_all(L), automorphisms(L.group))
        diag_orbit = next(o for o in orbits if TransferSystem.diagonal(L) in o)
        assert len(diag_orbit) == 1


# -- closed forms ---------------------------------------------------------------

def test_closed_form_normal_source_matches_generate():
    L = L_("Q8")
    z = L.resolve_name("<-1>")
    T = closed_form_normal_source(L, z, [L.resolve_name("<i>"), L.resolve_name("<j>")])
    assert T == generate(L, [(z, L.resolve_name("<i>")), (z, L.resolve_name("<j>"))])


def test_closed_form_normal_target_matches_generate():
    L = L_("Q8")
    T = closed_form_normal_target(L, [0], L.full)
    assert named(T) == {("1", "<-1>"), ("1", "<i>"), ("1", "<j>"), ("1", "<k>"),
                        ("1", "Q8")}
    assert T == generate(L, [(0, L.full)])


def test_closed_form_both_normal_pair():
    """With both ends normal the closure is the diagonal plus (M n K, M)."""
    L = L_("C8")
    T = closed_form_normal_source(L, 0, [2])  # <(1, C4)>
    assert named(T) == {("1", "C2"), ("1", "C4")}
    K4L = L_("K4")
    a = K4L.resolve_name("<a>")
    assert closed_form_normal_source(K4L, a, [a]) == TransferSystem.diagonal(K4L)


def test_closed_form_precondition_errors():
    L = L_("Sym3")
    t12 = L.resolve_name("<(12)>")
    with pytest.raises(ValueError, match="not normal"):
        closed_form_normal_source(L, t12, [L.full])
    with pytest.raises(ValueError, match="conjugation"):
        closed_form_normal_target(L, [t12], L.full)
    with pytest.raises(ValueError, match="not contained"):
        closed_form_normal_source(L, L.resolve_name("<(123)>"), [t12])


def test_closed_forms_on_random_normal_families():
    rng = random.Random(13)
    for name in ("Q8", "K4", "C8", "C2xC4"):
        G = abelian_group((2, 4)) if name == "C2xC4" else make_group(name)
        L = subgroup_lattice(G)
        for _ in range(25):
            k = rng.choice([s for s in range(L.n) if L.normal[s]])
            ups = [h for h in range(L.n) if L.includes[k][h]]
            hs = set()
            for h in rng.sample(ups, rng.randint(1, len(ups))):
                hs |= {L.conjugate[g][h] for g in range(G.order)}
            assert closed_form_normal_source(L, k, hs) == \
                generate(L, [(k, h) for h in hs])
            h = rng.choice([s for s in range(L.n) if L.normal[s]])
            downs = [kk for kk in range(L.n) if L.includes[kk][h]]
            ks = set()
            for kk in rng.sample(downs, rng.randint(1, len(downs))):
                ks |= {L.conjugate[g][kk] for g in range(G.order)}
            assert closed_form_normal_target(L, ks, h) == \
                generate(L, [(kk, h) for kk in ks])
