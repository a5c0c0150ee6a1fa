"""Permutation-group engine: double cosets, splitting types, reconstruction."""

import random

import pytest

from smo import permgrp as pg
from smo.permgrp import (
    ClassIntersectionCensus,
    DecompositionData,
    GroupParseError,
    GroupTooLarge,
    InconsistentCensus,
    InvalidDecomposition,
    NoIntegerSolution,
    ParentMismatch,
    SplittingType,
    all_subgroups,
    are_conjugate,
    census_from_unramified_types,
    class_intersection_census,
    coset_cycle_type,
    cycle_str,
    decomposition_candidates,
    double_coset_count_from_census,
    double_cosets,
    gassmann_equivalent,
    group_from_generators,
    parse_cycles,
    parse_group_file,
    pinv,
    pmul,
    recover_splitting_type,
    reconstruct_splitting_type,
    splitting_type_from_fibers,
    splitting_type_from_formula,
    unramified_types,
)
from tests.conftest import fixture_text


def sym(n):
    return group_from_generators(n, [parse_cycles("(1 2)", n), parse_cycles(cycle_str(tuple(list(range(1, n)) + [0])), n)])


S3 = sym(3)
S4 = sym(4)


def _sub(G, *cycles):
    return G.subgroup_from_generators([parse_cycles(c, G.degree) for c in cycles])


# ---------------------------------------------------------------------------
# Independent oracle: splitting type via cycle type of c-action on I-orbits
# ---------------------------------------------------------------------------

def oracle_splitting_type(G, G_E, dec):
    """Orbit lengths of <cI> acting on I\\(G/G_E), built from scratch."""
    reps, index = pg.left_cosets(G, G_E)
    # I-orbits on the coset space
    orbit_of = {}
    orbits = []
    for i in range(len(reps)):
        if i in orbit_of:
            continue
        orb = set()
        frontier = [reps[i]]
        while frontier:
            x = frontier.pop()
            j = index[x]
            if j in orb:
                continue
            orb.add(j)
            frontier.extend(pmul(g, reps[j]) for g in dec.I.elements)
        oid = len(orbits)
        orbits.append(orb)
        for j in orb:
            orbit_of[j] = oid
    # c permutes the I-orbits (I normal in D); take its cycle lengths
    img = {}
    for oid, orb in enumerate(orbits):
        j = next(iter(orb))
        img[oid] = orbit_of[index[pmul(dec.c, reps[j])]]
    seen = set()
    lengths = []
    for start in range(len(orbits)):
        if start in seen:
            continue
        j, length = start, 0
        while j not in seen:
            seen.add(j)
            length += 1
            j = img[j]
        lengths.append(length)
    return SplittingType.of(lengths)


# ---------------------------------------------------------------------------
# Raw permutations and parsing
# ---------------------------------------------------------------------------

def test_cycle_parse_examples():
    assert parse_cycles("(1 2 3)", 4) == (1, 2, 0, 3)
    assert parse_cycles("(1 2)(3 4)", 4) == (1, 0, 3, 2)
    assert parse_cycles("()", 3) == (0, 1, 2)
    assert cycle_str((1, 2, 0, 3)) == "(1 2 3)"
    assert cycle_str((0, 1, 2)) == "()"


def test_cycle_parse_errors():
    with pytest.raises(GroupParseError):
        parse_cycles("(1 5)", 4)
    with pytest.raises(GroupParseError):
        parse_cycles("(1 1)", 4)
    with pytest.raises(GroupParseError):
        parse_cycles("1 2 3", 4)


def test_pmul_pinv():
    a = parse_cycles("(1 2 3)", 3)
    b = parse_cycles("(1 2)", 3)
    assert pmul(a, b) == parse_cycles("(1 3)", 3)
    assert pmul(b, a) == parse_cycles("(2 3)", 3)
    assert pmul(a, pinv(a)) == (0, 1, 2)


def test_group_closure_and_classes():
    assert S3.order == 6
    assert sorted(len(c) for c in S3.classes) == [1, 2, 3]
    assert S4.order == 24
    assert sorted(len(c) for c in S4.classes) == [1, 3, 6, 6, 8]


def test_group_too_large():
    # S8 has order 40320 > 10080
    with pytest.raises(GroupTooLarge):
        sym(8)


# ---------------------------------------------------------------------------
# Cosets, double cosets, splitting types
# ---------------------------------------------------------------------------

def test_coset_cycle_type_examples():
    GE = _sub(S3, "(1 2)")
    assert coset_cycle_type(S3, GE, parse_cycles("(1 2 3)", 3)) == SplittingType.of([3])
    assert coset_cycle_type(S3, GE, parse_cycles("(1 2)", 3)) == SplittingType.of([1, 2])
    assert coset_cycle_type(S3, GE, S3.identity) == SplittingType.of([1, 1, 1])


def test_double_cosets_partition():
    H = _sub(S4, "(1 2)", "(3 4)")
    K = _sub(S4, "(1 2 3)")
    blocks = double_cosets(H, K)
    assert sum(len(b) for b in blocks) == 24
    all_elems = sorted(x for b in blocks for x in b)
    assert tuple(all_elems) == S4.elements


def test_s3_unramified_example():
    # D = <(123)>, I = trivial, c = (123), G_E = <(12)>: inert prime, type [3]
    GE = _sub(S3, "(1 2)")
    D = _sub(S3, "(1 2 3)")
    dec = DecompositionData.make(D, S3.trivial_subgroup(), parse_cycles("(1 2 3)", 3))
    assert splitting_type_from_fibers(S3, GE, dec) == SplittingType.of([3])
    assert splitting_type_from_formula(S3, GE, dec) == SplittingType.of([3])
    assert oracle_splitting_type(S3, GE, dec) == SplittingType.of([3])


def test_s3_ramified_example():
    # D = S3, I = A3, c = (12): one prime with e=3, f=1 above, type [1]
    GE = _sub(S3, "(1 2)")
    dec = DecompositionData.make(S3.full_subgroup(), _sub(S3, "(1 2 3)"), parse_cycles("(1 2)", 3))
    assert splitting_type_from_fibers(S3, GE, dec) == SplittingType.of([1])
    assert splitting_type_from_formula(S3, GE, dec) == SplittingType.of([1])


def test_invalid_decomposition_rejected():
    D = _sub(S4, "(1 2)", "(3 4)")  # Klein-type, not cyclic over trivial I
    with pytest.raises(InvalidDecomposition):
        DecompositionData.make(D, S4.trivial_subgroup(), parse_cycles("(1 2)", 4))
    with pytest.raises(InvalidDecomposition):
        DecompositionData.make(D, _sub(S4, "(1 2 3)"), parse_cycles("(1 2)", 4))


def test_parent_mismatch():
    GE = _sub(S3, "(1 2)")
    with pytest.raises(ParentMismatch):
        gassmann_equivalent(S4, GE, _sub(S4, "(1 2)"))


def test_formula_matches_fibers_and_oracle_s4_sweep():
    subs = all_subgroups(S4)
    decs = list(decomposition_candidates(S4, subs))
    assert decs, "sweep must be nonempty"
    checked = 0
    for GE in subs:
        for dec in decs:
            fib = splitting_type_from_fibers(S4, GE, dec)
            assert splitting_type_from_formula(S4, GE, dec) == fib
            checked += 1
    # spot-check the independent oracle on a deterministic sample
    rng = random.Random(0)
    for GE, dec in rng.sample([(g, d) for g in subs for d in decs], 60):
        assert oracle_splitting_type(S4, GE, dec) == splitting_type_from_fibers(S4, GE, dec)
    assert checked == len(subs) * len(decs)


def test_total_degree_identity():
    # sum of f over primes times e equals [G : G_E] within each D-double coset
    GE = _sub(S4, "(1 2)", "(1 2 3)")  # S3 point stabilizer, index 4
    for dec in decomposition_candidates(S4):
        st = splitting_type_from_fibers(S4, GE, dec)
        blocks = double_cosets(dec.D, GE)
        e = dec.I.order  # not the true local e per block, but the identity below holds
        assert sum(len(b) for b in blocks) == S4.order
        assert st.total == len(double_cosets(pg.power_inertia_subgroup(S4, dec, dec.quotient_order), GE))


# ---------------------------------------------------------------------------
# Census and reconstruction
# ---------------------------------------------------------------------------

def test_census_example_s3():
    GE = _sub(S3, "(1 2)")
    census = class_intersection_census(S3, GE)
    assert census.counts == (1, 1, 0)  # identity, transpositions, 3-cycles
    types = unramified_types(S3, GE)
    assert census_from_unramified_types(S3, types).counts == census.counts


def test_census_matches_enumeration_everywhere():
    for G in (S3, S4):
        types_cache = {}
        for H in all_subgroups(G):
            direct = class_intersection_census(G, H)
            derived = census_from_unramified_types(G, unramified_types(G, H))
            assert derived.counts == direct.counts


def test_inconsistent_census_rejected():
    bad = ClassIntersectionCensus(S3, (2, 1, 0))
    with pytest.raises(InconsistentCensus):
        bad.validate()
    GE = _sub(S3, "(1 2)")
    types = unramified_types(S3, GE)
    types = {i: (SplittingType.of([1, 1, 1]) if i != 0 else t) for i, t in types.items()}
    with pytest.raises(InconsistentCensus):
        census_from_unramified_types(S3, types)


def test_double_coset_count_burnside():
    GE = _sub(S4, "(1 2)", "(1 2 3)")
    census = class_intersection_census(S4, GE)
    for K in all_subgroups(S4):
        assert double_coset_count_from_census(S4, K, census) == len(double_cosets(K, GE))


def test_recover_examples():
    assert recover_splitting_type({1: 1, 2: 1}) == SplittingType.of([1])
    assert recover_splitting_type({1: 1, 2: 2}) == SplittingType.of([2])
    assert recover_splitting_type({1: 3, 2: 4, 3: 5, 6: 6}) == SplittingType.of([1, 2, 3])


def test_recover_roundtrip_random():
    from math import gcd

    rng = random.Random(42)
    for _ in range(300):
        m = rng.randrange(1, 13)
        divs = [d for d in range(1, m + 1) if m % d == 0]
        mults = {f: rng.randrange(0, 4) for f in divs}
        mults[m] = max(1, mults[m])  # m itself must occur (c has order m on some orbit)
        counts = {d: sum(gcd(d, f) * a for f, a in mults.items()) for d in divs}
        got = recover_splitting_type(counts)
        expect = SplittingType.of([f for f, a in mults.items() for _ in range(a)])
        assert got == expect


def test_recover_rejects_bad_counts():
    with pytest.raises(NoIntegerSolution):
        recover_splitting_type({1: 1, 2: 4})  # forces a negative a_1
    with pytest.raises(NoIntegerSolution):
        recover_splitting_type({1: 1, 2: 1, 3: 1})  # not the divisor set of max key


def test_pipeline_matches_fibers_s4_sweep():
    subs = all_subgroups(S4)
    for GE in subs:
        for dec in decomposition_candidates(S4, subs):
            assert reconstruct_splitting_type(S4, GE, dec) == splitting_type_from_fibers(S4, GE, dec)


def test_c_choice_independence():
    # the splitting type must not depend on which generator c of D/I is used
    GE = _sub(S4, "(1 2)", "(1 2 3)")
    D = _sub(S4, "(1 2 3 4)")
    I = S4.trivial_subgroup()
    results = {
        splitting_type_from_fibers(S4, GE, DecompositionData.make(D, I, c))
        for c in pg.valid_c_representatives(D, I)
    }
    assert len(results) == 1


# ---------------------------------------------------------------------------
# Gassmann equivalence
# ---------------------------------------------------------------------------

def test_gassmann_conjugate_subgroups():
    H1 = _sub(S4, "(1 2)")
    H2 = _sub(S4, "(3 4)")
    assert gassmann_equivalent(S4, H1, H2)
    assert are_conjugate(S4, H1, H2)


def test_gassmann_inequivalent():
    H1 = _sub(S4, "(1 2)(3 4)")
    H2 = _sub(S4, "(1 2)")
    assert not gassmann_equivalent(S4, H1, H2)


def test_gl32_point_plane_stabilizers():
    gf = parse_group_file(fixture_text("gl32.group"))
    G = gf.group
    assert G.order == 168
    P = gf.subgroups["POINT"]
    L = gf.subgroups["PLANE"]
    assert P.order == L.order == 24
    assert gassmann_equivalent(G, P, L)
    assert not are_conjugate(G, P, L)


# ---------------------------------------------------------------------------
# Group file parsing
# ---------------------------------------------------------------------------

def test_parse_group_file_s3():
    gf = parse_group_file(fixture_text("s3.group"))
    assert gf.group.order == 6
    assert set(gf.subgroups) == {"FULL", "A3", "GE", "TRIV"}
    assert set(gf.decomps) == {"RAM", "UNRAM"}
    name, dec = gf.decomps["UNRAM"]
    assert name == "GE"
    assert splitting_type_from_fibers(gf.group, gf.subgroups[name], dec) == SplittingType.of([3])


def test_parse_group_file_errors():
    with pytest.raises(GroupParseError):
        parse_group_file("gen (1 2)\n")  # gen before degree
    with pytest.raises(GroupParseError):
        parse_group_file("degree 3\nfoo bar\n")
    with pytest.raises(GroupParseError):
        parse_group_file("degree 3\ngen (1 2)\ndecomp X D=A I=B c=(1 2)\n")  # missing E
