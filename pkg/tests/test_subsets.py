"""Base subsets, their inexact collections and the exactness oracle."""

from itertools import combinations
from math import comb

import pytest

from sympol.bases import SymplecticBase, is_symplectic_base, random_base
from sympol.errors import DegenerateParameterError, DimensionError
from sympol.grassmann import adjacent, grassmannian
from sympol.space import SymplecticSpace
from sympol.subsets import (
    BaseSubset,
    base_subset_size,
    canonical_type2,
    certify_inexact,
    classify_maximal_inexact,
    common_base,
    common_complement_count,
    complement_adjacency_test,
    complement_family,
    complement_type1,
    complement_type2,
    complete_to_base,
    disjointness_degrees,
    distinct_complements,
    first_type_size,
    incident_members,
    inexactness_witness,
    is_exact,
    maximal_inexact_families,
    maximal_inexact_oracle,
    meet_at,
    meet_at_subspace,
    member_mask,
    ordered_type2_params,
    pins_every_point,
    second_type_size,
    subset_universe,
    type1_members,
    type2_members,
    unpinned_exact_example,
)

ORACLE_GRID = ((2, 2), (2, 3))


def layers(space):
    return range(space.n)


def subsets_of(space, base=None):
    base = base or SymplecticBase.standard(space)
    return [BaseSubset(base, k) for k in layers(space)]


def test_sizes_and_recurrence(small_space):
    sp = small_space
    n = sp.n
    for bs in subsets_of(sp):
        assert len(bs) == base_subset_size(n, bs.k)
        assert len(set(bs.members())) == len(bs)
    for k in range(n - 1):
        assert base_subset_size(n, k) * 2 * (n - k - 1) == base_subset_size(n, k + 1) * (k + 2)


def test_members_are_isotropic_of_right_dimension(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        for s in bs.members():
            assert s.pdim == bs.k
            assert sp.is_totally_isotropic(s)


def test_layer_bounds(small_space):
    base = SymplecticBase.standard(small_space)
    with pytest.raises(DimensionError):
        BaseSubset(base, small_space.n)
    with pytest.raises(DimensionError):
        BaseSubset(base, -1)


def test_membership_and_lookup(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        some = bs.index_sets[0]
        assert some in bs
        assert bs.index_set_of(bs.subspace(some)) == some
        outside = grassmannian(sp, bs.k)
        strange = next(s for s in outside if bs.index_set_of(s) is None)
        assert bs.index_set_of(strange) is None
        with pytest.raises(DimensionError):
            bs.subspace(frozenset(range(bs.k + 1)) | {sp.dim - 1})


def test_covering_counts_between_layers(small_space):
    sp = small_space
    for k in range(sp.n - 1):
        low = BaseSubset(SymplecticBase.standard(sp), k)
        high = BaseSubset(low.base, k + 1)
        for big in high.index_sets:
            inside = [s for s in low.index_sets if s <= big]
            assert len(inside) == k + 2
        for small in low.index_sets:
            above = [s for s in high.index_sets if small <= s]
            assert len(above) == 2 * (sp.n - k - 1)


def test_selector_identities(small_space):
    sp = small_space
    sigma = SymplecticBase.standard(sp).sigma
    for bs in subsets_of(sp):
        for i in range(sp.dim):
            assert bs.select(plus=(i,)) == bs.select(plus=(i,), minus=(sigma[i],))
    top_bs = subsets_of(sp)[sp.n - 1]
    for i in range(sp.dim):
        # in the top layer avoiding a point forces containing its partner
        assert top_bs.select(minus=(i,)) == top_bs.select(plus=(sigma[i],))


def test_incident_members(small_space):
    sp = small_space
    bs = subsets_of(sp)[sp.n - 1]
    probe = bs.index_sets[0]
    hits = incident_members(bs, probe)
    assert probe in hits
    for i in hits:
        assert i <= probe or probe <= i


def test_meets_agree_with_geometry(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        fams = [members for _, members in maximal_inexact_families(bs)]
        fams.append(frozenset(bs.index_sets[: max(2, len(bs) // 3)]))
        for collection in fams:
            for i in range(sp.dim):
                idx = meet_at(collection, i)
                geo = meet_at_subspace(bs, collection, i)
                if idx is None:
                    assert geo.vdim == 0
                else:
                    assert bs.base.space.is_totally_isotropic(geo)
                    got = [t for t in range(sp.dim) if geo.contains_vector(bs.base.points[t])]
                    assert frozenset(got) == idx


def test_full_subset_pins_and_is_exact(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        assert pins_every_point(bs, frozenset(bs.index_sets))
    if (sp.n, sp.p) in ORACLE_GRID:
        for bs in subsets_of(sp):
            assert is_exact(bs, frozenset(bs.index_sets))


@pytest.mark.parametrize("n,p", ORACLE_GRID)
def test_witness_decides_inexactness_on_small_layers(n, p):
    """Against the oracle: a witness certifies a second covering base,
    and on these layers every inexact collection has one."""
    sp = SymplecticSpace.standard(n, p)
    for bs in subsets_of(sp):
        whole = list(bs.index_sets)
        for r in range(2, len(whole) + 1):
            for combo in combinations(whole, r):
                collection = frozenset(combo)
                witness = inexactness_witness(bs, collection)
                exact = is_exact(bs, collection)
                if witness is not None:
                    built = certify_inexact(bs, collection)
                    assert built is not None
                    i, j, other = built
                    assert other != bs.base
                    assert not exact
                if exact:
                    assert witness is None


def test_pinning_implies_exact():
    sp = SymplecticSpace.standard(2, 3)
    for bs in subsets_of(sp):
        whole = list(bs.index_sets)
        for r in range(2, len(whole) + 1):
            for combo in combinations(whole, r):
                collection = frozenset(combo)
                if pins_every_point(bs, collection):
                    assert is_exact(bs, collection)


def test_unpinned_exact_example():
    sp = SymplecticSpace.standard(3, 2)
    bs = BaseSubset(SymplecticBase.standard(sp), 1)
    collection = unpinned_exact_example(bs)
    assert not pins_every_point(bs, collection)
    assert is_exact(bs, collection)
    with pytest.raises(DimensionError):
        unpinned_exact_example(BaseSubset(bs.base, 2))


@pytest.mark.parametrize("n,p", ORACLE_GRID)
def test_classification_matches_oracle(n, p):
    sp = SymplecticSpace.standard(n, p)
    for seed in ("standard", 5):
        base = SymplecticBase.standard(sp) if seed == "standard" else random_base(sp, seed)
        for k in layers(sp):
            bs = BaseSubset(base, k)
            oracle = set(maximal_inexact_oracle(bs))
            constructed = {members for _, members in maximal_inexact_families(bs)}
            assert oracle == constructed
            for collection in oracle:
                assert classify_maximal_inexact(bs, collection) is not None


def test_classification_single_layer_bigger_space():
    sp = SymplecticSpace.standard(3, 2)
    bs = BaseSubset(SymplecticBase.standard(sp), 1)
    oracle = set(maximal_inexact_oracle(bs))
    constructed = {members for _, members in maximal_inexact_families(bs)}
    assert oracle == constructed


def test_family_counts_and_sizes(small_space):
    sp = small_space
    n = sp.n
    for bs in subsets_of(sp):
        fams = maximal_inexact_families(bs)
        labels = [label for label, _ in fams]
        assert len(set(labels)) == len(labels)
        firsts = [m for (kind, _), m in fams if kind == "first"]
        seconds = [m for (kind, _), m in fams if kind == "second"]
        if bs.k < n - 1:
            assert len(firsts) == 2 * n
            assert all(len(m) == first_type_size(n, bs.k) for m in firsts)
        else:
            assert not firsts
        if bs.k >= 1:
            assert len(seconds) == 2 * n * (n - 1)
            assert len(set(seconds)) == len(seconds)
            assert all(len(m) == second_type_size(n, bs.k) for m in seconds)
        else:
            assert not seconds


def test_second_type_parameter_twins(small_space):
    sp = small_space
    base = SymplecticBase.standard(sp)
    sigma = base.sigma
    bs = BaseSubset(base, 1)
    params = ordered_type2_params(sigma)
    assert len(params) == 2 * sp.n * (2 * sp.n - 2)
    canon = {canonical_type2(sigma, i, j) for i, j in params}
    assert len(canon) == 2 * sp.n * (sp.n - 1)
    for i, j in params:
        ti, tj = sigma[j], sigma[i]
        assert type2_members(bs, i, j) == type2_members(bs, ti, tj)
        assert complement_type2(bs, i, j) == complement_type2(bs, ti, tj)
    with pytest.raises(DegenerateParameterError):
        type2_members(bs, 0, sigma[0])
    with pytest.raises(DegenerateParameterError):
        complement_type2(bs, 0, 0)


def test_complements_partition(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        whole = frozenset(bs.index_sets)
        for label, members in maximal_inexact_families(bs):
            kind, param = label
            if kind == "first":
                comp = complement_type1(bs, param)
            else:
                comp = complement_type2(bs, *param)
            assert members | comp == whole
            assert not members & comp


def test_disjointness_degree_laws(small_space):
    sp = small_space
    n = sp.n
    for bs in subsets_of(sp):
        degrees = dict(disjointness_degrees(bs))
        firsts = [d for (kind, _), d in degrees.items() if kind == "first"]
        seconds = [d for (kind, _), d in degrees.items() if kind == "second"]
        if bs.k == 0:
            assert firsts and not seconds
            assert all(d == 2 * n - 1 for d in firsts)
        elif bs.k < n - 1:
            assert all(d == 4 * n - 3 for d in firsts)
            assert all(d == 4 for d in seconds)
        else:
            assert not firsts
            assert all(d == 4 * n * n - 12 * n + 14 for d in seconds)


def test_distinct_complement_counts(small_space):
    sp = small_space
    n = sp.n
    for bs in subsets_of(sp):
        count = len(distinct_complements(bs))
        if bs.k == 0:
            assert count == 2 * n
        elif bs.k < n - 1:
            assert count == 2 * n * n
        else:
            assert count == 2 * n * (n - 1)


def scoped_disjointness_holds(bs, with_top_case):
    """Exhaustive check of the complement disjointness criterion."""
    sigma = bs.base.sigma
    comp = {(i, j): complement_type2(bs, i, j) for i, j in ordered_type2_params(sigma)}
    for (i, j), a in comp.items():
        for (i2, j2), b in comp.items():
            if (i, j) == (i2, j2):
                continue
            if a & b:
                continue
            ok = i2 == sigma[i] or i2 == j or j2 == i
            if with_top_case:
                ok = ok or j2 == sigma[j]
            if not ok:
                return False
    return True


def test_disjointness_criterion_scoped(small_space):
    sp = small_space
    for k in range(1, sp.n - 1):
        assert scoped_disjointness_holds(BaseSubset(SymplecticBase.standard(sp), k), False)
    top_bs = BaseSubset(SymplecticBase.standard(sp), sp.n - 1)
    assert scoped_disjointness_holds(top_bs, True)


def test_disjointness_criterion_needs_top_case():
    # at the top layer complements with j2 = sigma(j) can also be disjoint
    sp = SymplecticSpace.standard(2, 2)
    assert not scoped_disjointness_holds(BaseSubset(SymplecticBase.standard(sp), 1), False)


def test_common_complement_count_formula(small_space):
    sp = small_space
    bs = BaseSubset(SymplecticBase.standard(sp), sp.n - 1)
    for a in bs.index_sets:
        for b in bs.index_sets:
            if sorted(map(sorted, (a, b)))[0] != sorted(a):
                continue
            m = len(a & b) - 1
            assert common_complement_count(bs, a, b) == comb(m + 1, 2)


def test_complement_adjacency_iff_in_three_layers():
    sp = SymplecticSpace.standard(3, 2)
    bs = BaseSubset(SymplecticBase.standard(sp), 2)
    for a in bs.index_sets:
        for b in bs.index_sets:
            if a == b:
                continue
            geom = adjacent(bs.subspace(a), bs.subspace(b))
            assert complement_adjacency_test(bs, a, b) == geom


def test_complement_adjacency_degenerates_for_two_layers():
    sp = SymplecticSpace.standard(2, 2)
    bs = BaseSubset(SymplecticBase.standard(sp), 1)
    bad = [
        (a, b)
        for a in bs.index_sets
        for b in bs.index_sets
        if a != b
        and complement_adjacency_test(bs, a, b)
        and not adjacent(bs.subspace(a), bs.subspace(b))
    ]
    # disjoint top pairs share zero complements, which equals choose(1, 2)
    assert bad
    with pytest.raises(DimensionError):
        complement_adjacency_test(BaseSubset(bs.base, 0), frozenset((0,)), frozenset((1,)))


def test_subset_universe_alignment():
    sp = SymplecticSpace.standard(2, 2)
    universe = subset_universe(sp, 1)
    assert len(universe) == 90
    size = base_subset_size(2, 1)
    assert all(mask.bit_count() == size for mask in universe)
    bs = BaseSubset(SymplecticBase.standard(sp), 1)
    home = member_mask(bs, bs.index_sets)
    assert home in universe


@pytest.mark.parametrize("n,p", ((2, 2), (2, 3)))
def test_common_base_all_pairs(n, p):
    sp = SymplecticSpace.standard(n, p)
    for k in layers(sp):
        g = grassmannian(sp, k)
        step = 1 if (n, p) == (2, 2) else max(1, len(g) // 9)
        elems = list(g)[::step]
        for a in elems:
            for b in elems:
                base = common_base(sp, a, b)
                assert is_symplectic_base(sp, base.points)
                bs = BaseSubset(base, k)
                assert bs.index_set_of(a) is not None
                assert bs.index_set_of(b) is not None


def test_common_base_mixed_layers():
    sp = SymplecticSpace.standard(3, 2)
    g0 = grassmannian(sp, 0)
    g2 = grassmannian(sp, 2)
    for ai in range(0, len(g0), 13):
        for bi in range(0, len(g2), 41):
            a, b = g0[ai], g2[bi]
            base = common_base(sp, a, b)
            assert BaseSubset(base, 0).index_set_of(a) is not None
            assert BaseSubset(base, 2).index_set_of(b) is not None


def test_common_base_rejects_non_isotropic():
    sp = SymplecticSpace.standard(2, 2)
    bad = grassmannian(sp, 0)[0]
    from sympol.linalg import Subspace

    e1 = (1, 0, 0, 0)
    f1 = (0, 0, 1, 0)
    line = Subspace.span(2, 4, [e1, f1])
    with pytest.raises(DimensionError):
        common_base(sp, bad, line)


def test_complete_to_base_from_singles(small_space):
    sp = small_space
    base = SymplecticBase.standard(sp)
    singles = [base.points[i] for i in range(sp.n)]
    done = complete_to_base(sp, (), singles)
    assert is_symplectic_base(sp, done.points)
    for v in singles:
        assert v in done.points


def test_complete_to_base_rejects_degenerate():
    sp = SymplecticSpace.standard(2, 2)
    e1 = (1, 0, 0, 0)
    e2 = (0, 1, 0, 0)
    diag = (1, 1, 0, 0)
    with pytest.raises(DegenerateParameterError):
        complete_to_base(sp, (), [e1, e2, diag])


def test_size_formula_trichotomy():
    assert first_type_size(3, 1) == 8 and second_type_size(3, 1) == 7
    assert first_type_size(4, 2) == 20 and second_type_size(4, 2) == 20
    assert first_type_size(5, 3) == 48 and second_type_size(5, 3) == 52
    with pytest.raises(DimensionError):
        second_type_size(3, 0)


def test_size_formulas_match_families(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        if bs.k < sp.n - 1:
            assert len(type1_members(bs, 0)) == first_type_size(sp.n, bs.k)
        if bs.k >= 1:
            assert len(type2_members(bs, 0, 1)) == second_type_size(sp.n, bs.k)


def test_complement_family_sizes(small_space):
    sp = small_space
    for bs in subsets_of(sp):
        whole = len(bs)
        for (kind, param), members in complement_family(bs):
            if kind == "first":
                assert len(members) == whole - first_type_size(sp.n, bs.k)
            else:
                assert len(members) == whole - second_type_size(sp.n, bs.k)
