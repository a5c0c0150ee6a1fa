"""Finite permutation-group engine: double cosets and splitting types.

Groups are stored by exhaustive element enumeration (desk scale,
order <= 10080 by default) so that every double-coset partition and
class-intersection count is directly auditable.  Permutations are
tuples of images on 0..n-1; the text format is 1-indexed disjoint-cycle
notation.

The two central computations are the splitting type of a subgroup pair
(G_E together with decomposition data (D, I, c)) measured two ways:
once by brute-force fiber counting in the projection of double-coset
spaces, and once by the closed-form orbit-stabilizer count.  A third
route reconstructs the same multiset from unramified cycle types alone
(class-intersection census, double-coset counts, gcd-system inversion).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

MAX_GROUP_ORDER = 10080


class GroupError(Exception):
    pass


class GroupTooLarge(GroupError):
    pass


class ParentMismatch(GroupError):
    pass


class InvalidDecomposition(GroupError):
    pass


class InconsistentCensus(GroupError):
    pass


class NoIntegerSolution(GroupError):
    pass


class GroupParseError(GroupError):
    pass


# ---------------------------------------------------------------------------
# Raw permutations
# ---------------------------------------------------------------------------

def identity_perm(n):
    return tuple(range(n))


def pmul(a, b):
    """Composition (a*b)(i) = a(b(i))."""
    return tuple(a[x] for x in b)


def pinv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_order(a):
    e = identity_perm(len(a))
    x, k = a, 1
    while x != e:
        x = pmul(x, a)
        k += 1
    return k


def parse_cycles(text, n):
    """Parse 1-indexed disjoint-cycle notation like `(1 2 3)(4 5)`."""
    text = text.strip()
    if text in ("()", "e", ""):
        return identity_perm(n)
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", text):
        raise GroupParseError(f"bad cycle notation: {text!r}")
    img = list(range(n))
    seen = set()
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", cyc.strip()) if t]
        if any(p < 0 or p >= n for p in pts):
            raise GroupParseError(f"point out of range 1..{n} in {text!r}")
        if len(set(pts)) != len(pts) or seen & set(pts):
            raise GroupParseError(f"repeated point in {text!r}")
        seen |= set(pts)
        for i, p in enumerate(pts):
            img[p] = pts[(i + 1) % len(pts)]
    return tuple(img)


def cycle_str(perm):
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = perm[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"


def _closure(n, gens, max_order=MAX_GROUP_ORDER):
    e = identity_perm(n)
    elems = {e}
    frontier = [e]
    gen_list = [tuple(g) for g in dict.fromkeys(gens) if tuple(g) != e]
    while frontier:
        x = frontier.pop()
        for g in gen_list:
            y = pmul(x, g)
            if y not in elems:
                if len(elems) >= max_order:
                    raise GroupTooLarge(f"group enumeration exceeds {max_order}")
                elems.add(y)
                frontier.append(y)
    return elems


# ---------------------------------------------------------------------------
# Splitting types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplittingType:
    """Multiset of positive integers, stored as a sorted tuple."""

    entries: tuple

    @staticmethod
    def of(values):
        entries = tuple(sorted(int(v) for v in values))
        if not entries or any(v < 1 for v in entries):
            raise ValueError("splitting type must be a nonempty multiset of positive integers")
        return SplittingType(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def ones(self):
        return sum(1 for v in self.entries if v == 1)

    @property
    def total(self):
        return sum(self.entries)

    def __str__(self):
        return "[" + ",".join(map(str, self.entries)) + "]"


# ---------------------------------------------------------------------------
# Groups and subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple
    elements: tuple  # canonically sorted
    classes: tuple   # tuple of sorted tuples, partition of elements

    def __eq__(self, other):
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.degree, self.elements))

    @property
    def order(self):
        return len(self.elements)

    @cached_property
    def eset(self):
        return frozenset(self.elements)

    @cached_property
    def identity(self):
        return identity_perm(self.degree)

    def class_reps(self):
        return [cls[0] for cls in self.classes]

    def subgroup(self, elems):
        elems = frozenset(tuple(e) for e in elems)
        if not elems <= self.eset:
            raise ParentMismatch("subgroup elements not contained in the group")
        sub = _closure(self.degree, elems)
        if sub != elems:
            raise GroupError("element set is not closed")
        return SubgroupHandle(self, tuple(sorted(elems)))

    def subgroup_from_generators(self, gens):
        gens = [tuple(g) for g in gens]
        for g in gens:
            if g not in self.eset:
                raise ParentMismatch("generator not in the group")
        return SubgroupHandle(self, tuple(sorted(_closure(self.degree, gens))))

    def trivial_subgroup(self):
        return SubgroupHandle(self, (self.identity,))

    def full_subgroup(self):
        return SubgroupHandle(self, self.elements)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def group_from_generators(n, gens, max_order=MAX_GROUP_ORDER) -> PermGroup:
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(range(n)):
            raise GroupError(f"not a permutation of 0..{n-1}: {g}")
    elems = _closure(n, gens, max_order)
    elements = tuple(sorted(elems))
    # conjugacy classes as orbits of conjugation by generators
    seen = set()
    classes = []
    for x in elements:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = pmul(pmul(pinv(g), y), g)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return PermGroup(n, tuple(gens), elements, tuple(classes))


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    parent: PermGroup
    elements: tuple  # canonically sorted, closed, contains identity

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupHandle)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @cached_property
    def eset(self):
        return frozenset(self.elements)

    def conjugate(self, g):
        gi = pinv(g)
        return SubgroupHandle(self.parent, tuple(sorted(pmul(pmul(gi, x), g) for x in self.elements)))

    def is_normal_in(self, other: "SubgroupHandle"):
        return all(
            pmul(pmul(pinv(g), x), g) in self.eset
            for g in other.elements
            for x in self.elements
        )

    def __repr__(self):
        return f"SubgroupHandle(order={self.order} in {self.parent!r})"


def _check_same_parent(*subs):
    parent = subs[0].parent
    for s in subs[1:]:
        if s.parent != parent:
            raise ParentMismatch("subgroups of different parent groups")
    return parent


@dataclass(frozen=True)
class DecompositionData:
    """Decomposition subgroup D, inertia I normal in D, and c with D = <c>I."""

    D: SubgroupHandle
    I: SubgroupHandle
    c: tuple

    @staticmethod
    def make(D, I, c):
        _check_same_parent(D, I)
        c = tuple(c)
        if c not in D.eset:
            raise InvalidDecomposition("c is not an element of D")
        if not I.eset <= D.eset:
            raise InvalidDecomposition("I is not contained in D")
        if not I.is_normal_in(D):
            raise InvalidDecomposition("I is not normal in D")
        cyc = cyclic_powers(c)
        prod = {pmul(x, i) for x in cyc for i in I.elements}
        if prod != set(D.elements):
            raise InvalidDecomposition("D != <c>I")
        return DecompositionData(D, I, c)

    @property
    def quotient_order(self):
        return self.D.order // self.I.order


def cyclic_powers(c):
    e = identity_perm(len(c))
    out = [e]
    x = c
    while x != e:
        out.append(x)
        x = pmul(x, c)
    return out


# ---------------------------------------------------------------------------
# Cosets and double cosets
# ---------------------------------------------------------------------------

def left_cosets(G: PermGroup, H: SubgroupHandle):
    """Left cosets gH: (sorted reps, dict element -> coset index)."""
    if H.parent != G:
        raise ParentMismatch("subgroup of a different group")
    index = {}
    reps = []
    for g in G.elements:
        if g in index:
            continue
        coset = sorted(pmul(g, h) for h in H.elements)
        idx = len(reps)
        reps.append(coset[0])
        for x in coset:
            index[x] = idx
    return reps, index


def coset_cycle_type(G, H, g) -> SplittingType:
    """Cycle type of g acting by left multiplication on G/H."""
    reps, index = left_cosets(G, H)
    img = [index[pmul(g, r)] for r in reps]
    seen = [False] * len(reps)
    lengths = []
    for i in range(len(reps)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            length += 1
            j = img[j]
        lengths.append(length)
    return SplittingType.of(lengths)


def double_cosets(H: SubgroupHandle, K: SubgroupHandle):
    """Partition of G into H-K double cosets, blocks ordered by least element."""
    G = _check_same_parent(H, K)
    remaining = set(G.elements)
    blocks = []
    while remaining:
        g = min(remaining)
        block = {pmul(pmul(h, g), k) for h in H.elements for k in K.elements}
        blocks.append(tuple(sorted(block)))
        remaining -= block
    blocks.sort(key=lambda b: b[0])
    return blocks


# ---------------------------------------------------------------------------
# Splitting types: fiber route and orbit-stabilizer route
# ---------------------------------------------------------------------------

def splitting_type_from_fibers(G, G_E, dec: DecompositionData) -> SplittingType:
    """Multiset of fiber sizes of I\\G/G_E -> D\\G/G_E.

    Fiber size counts the upstairs double cosets over a downstairs one.
    """
    _validate(G, G_E, dec)
    upstairs = double_cosets(dec.I, G_E)
    downstairs = double_cosets(dec.D, G_E)
    down_index = {}
    for i, block in enumerate(downstairs):
        for x in block:
            down_index[x] = i
    fibers = Counter(down_index[block[0]] for block in upstairs)
    return SplittingType.of(fibers.values())


def splitting_type_from_formula(G, G_E, dec: DecompositionData) -> SplittingType:
    """Closed-form fiber sizes |C^g| / |C^g n (I^g (D^g n G_E))| per double coset."""
    _validate(G, G_E, dec)
    C = cyclic_powers(dec.c)
    out = []
    for block in double_cosets(dec.D, G_E):
        g = block[0]
        gi = pinv(g)
        conj = lambda x: pmul(pmul(gi, x), g)
        Cg = {conj(x) for x in C}
        Ig = [conj(x) for x in dec.I.elements]
        DgE = [y for y in (conj(x) for x in dec.D.elements) if y in G_E.eset]
        kernel = {pmul(i, t) for i in Ig for t in DgE}
        inter = len(Cg & kernel)
        if inter == 0 or len(Cg) % inter:
            raise InvalidDecomposition("orbit-stabilizer count failed to divide")
        out.append(len(Cg) // inter)
    return SplittingType.of(out)


def _validate(G, G_E, dec):
    if G_E.parent != G or dec.D.parent != G:
        raise ParentMismatch("subgroup data from a different group")
    # revalidate so corrupted/hand-built triples are rejected uniformly
    DecompositionData.make(dec.D, dec.I, dec.c)


# ---------------------------------------------------------------------------
# Census and reconstruction (unramified data -> ramified splitting types)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassIntersectionCensus:
    """Counts |C n G_E| per conjugacy class of G, aligned with G.classes."""

    group: PermGroup
    counts: tuple

    @property
    def subgroup_order(self):
        return sum(self.counts)

    def validate(self):
        id_idx = next(
            i for i, cls in enumerate(self.group.classes) if cls[0] == self.group.identity
        )
        if self.counts[id_idx] != 1:
            raise InconsistentCensus("identity class count must be 1")
        if any(c < 0 for c in self.counts):
            raise InconsistentCensus("negative class-intersection count")
        return self


def unramified_types(G, G_E):
    """Cycle type of a representative of each class on G/G_E, keyed by class index."""
    return {i: coset_cycle_type(G, G_E, cls[0]) for i, cls in enumerate(G.classes)}


def class_intersection_census(G, H) -> ClassIntersectionCensus:
    """Direct enumeration census (the oracle side)."""
    if H.parent != G:
        raise ParentMismatch("subgroup of a different group")
    counts = tuple(sum(1 for x in cls if x in H.eset) for cls in G.classes)
    return ClassIntersectionCensus(G, counts).validate()


def census_from_unramified_types(G, types) -> ClassIntersectionCensus:
    """Gassmann's calculation: |C n G_E| from fixed points on G/G_E.

    `types` maps each class index to the cycle type of its representative
    acting on the coset space; the count is fix * |C| * |G_E| / |G|.
    """
    if set(types) != set(range(len(G.classes))):
        raise InconsistentCensus("types must cover every conjugacy class exactly once")
    id_idx = next(i for i, cls in enumerate(G.classes) if cls[0] == G.identity)
    n_cosets = types[id_idx].total
    if G.order % n_cosets:
        raise InconsistentCensus("identity cycle type does not divide the group order")
    h_order = G.order // n_cosets
    counts = []
    for i, cls in enumerate(G.classes):
        val = Fraction(types[i].ones * len(cls) * h_order, G.order)
        if val.denominator != 1:
            raise InconsistentCensus(f"non-integral class intersection for class {i}")
        counts.append(int(val))
    census = ClassIntersectionCensus(G, tuple(counts)).validate()
    if census.subgroup_order != h_order:
        raise InconsistentCensus("census counts do not sum to the subgroup order")
    return census


def double_coset_count_from_census(G, K, census: ClassIntersectionCensus) -> int:
    """|K\\G/G_E| by Burnside/character count, exact rational arithmetic."""
    if K.parent != G or census.group != G:
        raise ParentMismatch("data from a different group")
    h_order = census.subgroup_order
    total = Fraction(0)
    for cls, count in zip(G.classes, census.counts):
        in_k = sum(1 for x in cls if x in K.eset)
        if in_k:
            total += Fraction(in_k * count, len(cls))
    total *= Fraction(G.order, K.order * h_order)
    if total.denominator != 1:
        raise InconsistentCensus("non-integral double-coset count")
    return int(total)


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def recover_splitting_type(counts) -> SplittingType:
    """Invert counts[d] = sum over f | m of gcd(d, f) * a_f.

    A cyclic orbit of size f splits into gcd(d, f) pieces under the d-th
    power subgroup, so the count of <c^d>I double cosets is a gcd-weighted
    sum of residue-degree multiplicities; the gcd matrix over the divisor
    lattice is invertible, and a_f must come out as nonnegative integers.
    """
    m = max(counts)
    divs = _divisors(m)
    if set(counts) != set(divs):
        raise NoIntegerSolution(f"counts must be indexed by the divisors of {m}")
    k = len(divs)
    mat = [[Fraction(gcd(d, f)) for f in divs] + [Fraction(counts[d])] for d in divs]
    # Gaussian elimination with exact rationals
    for col in range(k):
        piv = next((r for r in range(col, k) if mat[r][col]), None)
        if piv is None:
            raise NoIntegerSolution("gcd matrix is singular")
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(k):
            if r != col and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    sol = [row[k] for row in mat]
    if any(v.denominator != 1 or v < 0 for v in sol):
        raise NoIntegerSolution(f"no nonnegative integer solution: {sol}")
    entries = []
    for f, a in zip(divs, sol):
        entries.extend([f] * int(a))
    if not entries:
        raise NoIntegerSolution("empty splitting type")
    return SplittingType.of(entries)


def power_inertia_subgroup(G, dec: DecompositionData, d: int) -> SubgroupHandle:
    """The subgroup <c^d> I (a subgroup since I is normal in D)."""
    e = identity_perm(G.degree)
    x = e
    for _ in range(d):
        x = pmul(x, dec.c)
    powers = cyclic_powers(x)
    elems = {pmul(a, i) for a in powers for i in dec.I.elements}
    return SubgroupHandle(G, tuple(sorted(elems)))


def divisor_counts_from_census(G, G_E_census, dec: DecompositionData):
    """|C^d I \\ G / G_E| for every divisor d of |D/I|, from the census alone."""
    m = dec.quotient_order
    return {
        d: double_coset_count_from_census(G, power_inertia_subgroup(G, dec, d), G_E_census)
        for d in _divisors(m)
    }


def reconstruct_splitting_type(G, G_E, dec: DecompositionData) -> SplittingType:
    """Full reconstruction pipeline using only unramified cycle types.

    unramified types -> class-intersection census -> double-coset counts
    for each divisor of |D/I| -> gcd-system inversion.  Never touches the
    fiber computation it is checked against.
    """
    _validate(G, G_E, dec)
    types = unramified_types(G, G_E)
    census = census_from_unramified_types(G, types)
    counts = divisor_counts_from_census(G, census, dec)
    return recover_splitting_type(counts)


def gassmann_equivalent(G, H1, H2) -> bool:
    """True iff H1 and H2 meet every conjugacy class of G in equal counts."""
    if H1.parent != G or H2.parent != G:
        raise ParentMismatch("subgroups of a different group")
    return class_intersection_census(G, H1).counts == class_intersection_census(G, H2).counts


def are_conjugate(G, H1, H2) -> bool:
    """Exhaustive conjugacy search over all of G."""
    if H1.order != H2.order:
        return False
    target = H2.eset
    return any(H1.conjugate(g).eset == target for g in G.elements)


# ---------------------------------------------------------------------------
# Subgroup and decomposition-data enumeration (test/experiment sweeps)
# ---------------------------------------------------------------------------

def _subgroup_sets(n, elements):
    e = identity_perm(n)
    seed = frozenset([e])
    subs = {seed}
    frontier = [(seed, ())]
    while frontier:
        H, gens = frontier.pop()
        for g in elements:
            if g in H:
                continue
            new_gens = gens + (g,)
            H2 = frozenset(_closure(n, new_gens, max_order=len(elements)))
            if H2 not in subs:
                subs.add(H2)
                frontier.append((H2, new_gens))
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def all_subgroups(G: PermGroup):
    """Every subgroup of G, smallest first (exhaustive, desk scale)."""
    return [SubgroupHandle(G, tuple(sorted(s))) for s in _subgroup_sets(G.degree, G.elements)]


def valid_c_representatives(D: SubgroupHandle, I: SubgroupHandle):
    """One c per generating coset of the cyclic quotient D/I.

    Yields the minimal element of each coset cI whose powers together
    with I cover D; empty if D/I is not cyclic.
    """
    d_set = set(D.elements)
    covered = set()
    out = []
    for c in D.elements:
        if c in covered:
            continue
        coset = {pmul(c, i) for i in I.elements}
        covered |= coset
        powers = cyclic_powers(c)
        prod = {pmul(a, i) for a in powers for i in I.elements}
        if prod == d_set:
            out.append(min(coset))
    return sorted(out)


def decomposition_candidates(G, subgroups=None):
    """All valid (D, I, c) triples over the given (or all) subgroups D."""
    if subgroups is None:
        subgroups = all_subgroups(G)
    for D in subgroups:
        inner = [SubgroupHandle(G, tuple(sorted(s))) for s in _subgroup_sets(G.degree, D.elements)]
        for I in inner:
            if not I.is_normal_in(D):
                continue
            for c in valid_c_representatives(D, I):
                yield DecompositionData.make(D, I, c)


# ---------------------------------------------------------------------------
# Group file format
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupFile:
    group: PermGroup
    subgroups: dict
    decomps: dict  # name -> (subfield name for G_E, DecompositionData)


def parse_group_file(text) -> GroupFile:
    """Parse the plain-text group format.

    degree n / gen (...) lines define G; `sub NAME` opens a subgroup whose
    following `gen` lines generate it; `decomp NAME E=SUB D=SUB I=SUB c=(...)`
    names a reconstruction scenario.
    """
    degree = None
    top_gens = []
    subs_raw = {}
    decomp_lines = []
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "degree":
            degree = int(rest)
        elif head == "gen":
            if degree is None:
                raise GroupParseError("gen before degree")
            perm = parse_cycles(rest, degree)
            (top_gens if current is None else subs_raw[current]).append(perm)
        elif head == "sub":
            if not rest:
                raise GroupParseError("sub requires a name")
            current = rest
            subs_raw.setdefault(current, [])
        elif head == "decomp":
            decomp_lines.append(rest)
            current = None
        else:
            raise GroupParseError(f"unknown directive {head!r}")
    if degree is None:
        raise GroupParseError("missing degree line")
    group = group_from_generators(degree, top_gens)
    subgroups = {name: group.subgroup_from_generators(gens) for name, gens in subs_raw.items()}
    decomps = {}
    for line in decomp_lines:
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise GroupParseError(f"bad decomp line: {line!r}")
        name, spec = parts
        fields = dict(re.findall(r"(\w+)=(\([^=]*\)|\S+)", spec))
        missing = {"E", "D", "I", "c"} - set(fields)
        if missing:
            raise GroupParseError(f"decomp {name} missing {sorted(missing)}")
        for key in ("E", "D", "I"):
            if fields[key] not in subgroups:
                raise GroupParseError(f"decomp {name}: unknown subgroup {fields[key]!r}")
        dec = DecompositionData.make(
            subgroups[fields["D"]],
            subgroups[fields["I"]],
            parse_cycles(fields["c"], degree),
        )
        decomps[name] = (fields["E"], dec)
    return GroupFile(group, subgroups, decomps)
