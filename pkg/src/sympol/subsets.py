"""Base subsets of an isotropic Grassmannian and their inexact structure.

A symplectic base spans a finite family of totally isotropic subspaces
in each Grassmannian layer.  This module builds those families by index
bookkeeping, decides which subcollections pin down the spanning base,
and constructs the maximal collections that do not, together with their
complements and the counting invariants attached to both.
"""

from functools import lru_cache
from itertools import combinations
from math import comb

from sympol.bases import SymplecticBase, enumerate_all_bases, perturb_pair
from sympol.errors import DegenerateParameterError, DimensionError
from sympol.grassmann import grassmannian
from sympol.linalg import Subspace, extend_basis, intersect_all, solve_particular, vec_add, vec_scale
from sympol.space import SymplecticSpace
from sympol._kernels import nullspace


def base_subset_size(n, k):
    """Member count of any base subset of the layer-k Grassmannian."""
    return 2 ** (k + 1) * comb(n, k + 1)


def admissible_index_sets(sigma, k):
    """All (k+1)-subsets of base positions containing no partner pair."""
    d = len(sigma)
    out = []
    for combo in combinations(range(d), k + 1):
        chosen = set(combo)
        if all(sigma[i] not in chosen for i in combo):
            out.append(frozenset(combo))
    return tuple(out)


def span_of_positions(base: SymplecticBase, positions) -> Subspace:
    space = base.space
    return Subspace.span(space.p, space.dim, [base.points[i] for i in positions])


class BaseSubset:
    """Members of the layer-k Grassmannian spanned by points of one base.

    A member is recorded by its index set, the k+1 positions whose
    points span it.  Partner positions never share an index set, and
    distinct index sets give distinct members because the base points
    are linearly independent, so the index sets are a faithful catalog.
    """

    __slots__ = ("base", "k", "index_sets", "_position", "_spans", "_by_rows")

    def __init__(self, base: SymplecticBase, k: int):
        n = base.space.n
        if not 0 <= k <= n - 1:
            raise DimensionError(f"layer must lie in 0..{n - 1}, got {k}")
        self.base = base
        self.k = k
        self.index_sets = admissible_index_sets(base.sigma, k)
        self._position = {s: i for i, s in enumerate(self.index_sets)}
        self._spans = {}
        self._by_rows = None

    def __len__(self):
        return len(self.index_sets)

    def __iter__(self):
        return iter(self.index_sets)

    def __contains__(self, index_set):
        return index_set in self._position

    def subspace(self, index_set) -> Subspace:
        """The member spanned by the points at the given positions."""
        s = self._spans.get(index_set)
        if s is None:
            if index_set not in self._position:
                raise DimensionError(f"not a member index set: {sorted(index_set)}")
            s = span_of_positions(self.base, index_set)
            self._spans[index_set] = s
        return s

    def members(self):
        """Every member as a subspace, aligned with index_sets."""
        return tuple(self.subspace(i) for i in self.index_sets)

    def index_set_of(self, s: Subspace):
        """Index set of a member subspace, or None for non-members."""
        if self._by_rows is None:
            self._by_rows = {self.subspace(i).rows: i for i in self.index_sets}
        return self._by_rows.get(s.rows)

    def select(self, plus=(), minus=()):
        """Members through every plus position avoiding every minus one."""
        plus = frozenset(plus)
        minus = frozenset(minus)
        return frozenset(i for i in self.index_sets if plus <= i and not (minus & i))


def incident_members(bs: BaseSubset, positions):
    """Members comparable with the span of the given positions."""
    outer = frozenset(positions)
    return frozenset(i for i in bs.index_sets if i <= outer or outer <= i)


def incident_members_subspace(bs: BaseSubset, s: Subspace):
    """Members containing or contained in an arbitrary subspace."""
    hits = set()
    for i in bs.index_sets:
        m = bs.subspace(i)
        if m.contains(s) or s.contains(m):
            hits.add(i)
    return frozenset(hits)


def meet_at(collection, i):
    """Index form of the intersection of the members through position i.

    Returns None when no member of the collection passes through i; the
    geometric intersection is empty in that case, never otherwise.
    """
    acc = None
    for index_set in collection:
        if i in index_set:
            acc = index_set if acc is None else acc & index_set
    return acc


def meet_at_subspace(bs: BaseSubset, collection, i) -> Subspace:
    """Geometric form of meet_at, for cross-checking the index form."""
    through = [bs.subspace(s) for s in collection if i in s]
    if not through:
        space = bs.base.space
        return Subspace.empty(space.p, space.dim)
    return intersect_all(through)


def pins_every_point(bs: BaseSubset, collection) -> bool:
    """Whether each position is the full meet of its members.

    A collection passing this test extends to a unique base subset; the
    converse direction fails, so a False answer decides nothing.
    """
    return all(meet_at(collection, i) == {i} for i in range(bs.base.space.dim))


def inexactness_witness(bs: BaseSubset, collection):
    """A position pair (i, j) certifying a second covering subset, or None.

    The certificate needs j distinct from i and its partner, j inside
    the meet at i, and the partner of i inside the meet at the partner
    of j.  Sliding the point at i along the line to j then leaves room
    to retune the point at the partner of j, giving a different base
    whose subset still covers the collection.
    """
    sigma = bs.base.sigma
    d = len(sigma)
    meets = [meet_at(collection, i) for i in range(d)]
    for i in range(d):
        if meets[i] is None:
            continue
        for j in sorted(meets[i]):
            if j == i or j == sigma[i]:
                continue
            other = meets[sigma[j]]
            if other is not None and sigma[i] in other:
                return (i, j)
    return None


def certify_inexact(bs: BaseSubset, collection, c=1):
    """Build the second base promised by an inexactness witness.

    Returns (i, j, base) where the base differs from the home one at
    positions i and partner-of-j, yet its subset covers the collection;
    None when no witness is found.
    """
    witness = inexactness_witness(bs, collection)
    if witness is None:
        return None
    i, j = witness
    other = perturb_pair(bs.base, i, j, c)
    cover = BaseSubset(other, bs.k)
    covered = {cover.subspace(t).rows for t in cover.index_sets}
    for index_set in collection:
        if bs.subspace(index_set).rows not in covered:
            raise RuntimeError("witness base fails to cover the collection")
    return (i, j, other)


def type1_members(bs: BaseSubset, i):
    """First-type family: every member avoiding position i."""
    return bs.select(minus=(i,))


def type2_members(bs: BaseSubset, i, j):
    """Second-type family for a position pair with j not i or its partner.

    Union of the members through both i and j, those through both
    partners, and those avoiding i and the partner of j.  Inexact in
    every layer; maximal precisely when k >= 1.
    """
    sigma = bs.base.sigma
    if j == i or j == sigma[i]:
        raise DegenerateParameterError(f"second-type parameters need j outside ({i}, {sigma[i]})")
    return (
        bs.select(plus=(i, j))
        | bs.select(plus=(sigma[i], sigma[j]))
        | bs.select(minus=(i, sigma[j]))
    )


def ordered_type2_params(sigma):
    d = len(sigma)
    return tuple((i, j) for i in range(d) for j in range(d) if j != i and j != sigma[i])


def canonical_type2(sigma, i, j):
    """Smaller of (i, j) and its partner-swapped twin, which spans the
    same second-type family."""
    return min((i, j), (sigma[j], sigma[i]))


def maximal_inexact_families(bs: BaseSubset):
    """Constructed maximal inexact subsets, one entry per distinct set.

    First-type entries ("first", i) exist for k < n - 1, second-type
    entries ("second", (i, j)) for k >= 1 under canonical parameters.
    """
    space = bs.base.space
    sigma = bs.base.sigma
    out = []
    if bs.k < space.n - 1:
        out.extend((("first", i), type1_members(bs, i)) for i in range(space.dim))
    if bs.k >= 1:
        for i, j in ordered_type2_params(sigma):
            if (i, j) == canonical_type2(sigma, i, j):
                out.append((("second", (i, j)), type2_members(bs, i, j)))
    return tuple(out)


def classify_maximal_inexact(bs: BaseSubset, collection):
    """Label of the constructed family equal to the collection, or None."""
    for label, members in maximal_inexact_families(bs):
        if members == collection:
            return label
    return None


def complement_type1(bs: BaseSubset, i):
    """Complement of the first-type family: members through position i."""
    return bs.select(plus=(i,))


def complement_type2(bs: BaseSubset, i, j):
    """Complement of the second-type family for (i, j).

    Members through i avoiding j joined with members through the
    partner of j avoiding the partner of i; the two blocks overlap.
    """
    sigma = bs.base.sigma
    if j == i or j == sigma[i]:
        raise DegenerateParameterError(f"second-type parameters need j outside ({i}, {sigma[i]})")
    return bs.select(plus=(i,), minus=(j,)) | bs.select(plus=(sigma[j],), minus=(sigma[i],))


def complement_family(bs: BaseSubset):
    """Complement subsets labelled by their defining parameters.

    Second-type entries run over ordered pairs, so each such set
    appears once as (i, j) and once as the partner-swapped twin; the
    disjointness degrees below follow this parameter count.
    """
    space = bs.base.space
    sigma = bs.base.sigma
    out = []
    if bs.k < space.n - 1:
        out.extend((("first", i), complement_type1(bs, i)) for i in range(space.dim))
    if bs.k >= 1:
        out.extend(
            (("second", (i, j)), complement_type2(bs, i, j))
            for i, j in ordered_type2_params(sigma)
        )
    return tuple(out)


def disjointness_degrees(bs: BaseSubset):
    """How many other complement-family entries each entry misses entirely."""
    fam = complement_family(bs)
    return tuple(
        (label, sum(1 for other, members2 in fam if other != label and not (members & members2)))
        for label, members in fam
    )


def distinct_complements(bs: BaseSubset):
    """Deduplicated complement subsets in a canonical order."""
    seen = {}
    for _, members in complement_family(bs):
        seen.setdefault(members, None)
    return tuple(sorted(seen, key=_collection_key))


def common_complement_count(bs: BaseSubset, sa, ua) -> int:
    """Number of distinct complement subsets containing both members."""
    sa = frozenset(sa)
    ua = frozenset(ua)
    for index_set in (sa, ua):
        if index_set not in bs:
            raise DimensionError(f"not a member index set: {sorted(index_set)}")
    return sum(1 for members in distinct_complements(bs) if sa in members and ua in members)


def complement_adjacency_test(bs: BaseSubset, sa, ua) -> bool:
    """Adjacency of two top-layer members read off the complement count.

    Requires k = n - 1; the count equals choose(t, 2) for t shared
    positions, which separates adjacent pairs only when n >= 3.
    """
    if bs.k != bs.base.space.n - 1:
        raise DimensionError("complement counting reads adjacency only in the top layer")
    return common_complement_count(bs, sa, ua) == comb(bs.k, 2)


def first_type_size(n, k):
    """Member count of a first-type maximal inexact subset."""
    return base_subset_size(n, k) - 2**k * comb(n - 1, k)


def second_type_size(n, k):
    """Member count of a second-type maximal inexact subset, k >= 1.

    The three defining blocks are pairwise disjoint; the two through-
    blocks share a size and the avoiding block follows by inclusion and
    exclusion.
    """
    if k < 1:
        raise DimensionError("second-type families are maximal only for k >= 1")
    through = 2 ** (k - 1) * comb(n - 2, k - 1)
    avoiding = base_subset_size(n, k) - 2 ** (k + 1) * comb(n - 1, k) + through
    return 2 * through + avoiding


def _collection_key(collection):
    return tuple(sorted(tuple(sorted(i)) for i in collection))


def _mask_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def member_mask(bs: BaseSubset, collection, gr=None) -> int:
    """Bitmask of a collection in the Grassmannian index order."""
    if gr is None:
        gr = grassmannian(bs.base.space, bs.k)
    mask = 0
    for index_set in collection:
        mask |= 1 << gr.index_of(bs.subspace(index_set))
    return mask


@lru_cache(maxsize=None)
def subset_universe(space: SymplecticSpace, k):
    """Bitmask of every base subset of the layer, one per symplectic base.

    Aligned with enumerate_all_bases, so the same feasibility grid
    applies.
    """
    gr = grassmannian(space, k)
    masks = []
    for base in enumerate_all_bases(space):
        bs = BaseSubset(base, k)
        mask = 0
        for index_set in bs.index_sets:
            mask |= 1 << gr.index_of(bs.subspace(index_set))
        masks.append(mask)
    return tuple(masks)


def covering_bases(bs: BaseSubset, collection, limit=2):
    """Bases whose layer subset covers the collection, up to a limit.

    The home base always qualifies, so a second hit certifies that the
    collection is inexact.
    """
    space = bs.base.space
    gr = grassmannian(space, bs.k)
    mask = member_mask(bs, collection, gr)
    out = []
    for base, cover in zip(enumerate_all_bases(space), subset_universe(space, bs.k)):
        if mask | cover == cover:
            out.append(base)
            if len(out) == limit:
                break
    return tuple(out)


def is_exact(bs: BaseSubset, collection) -> bool:
    """Exactness decided by exhaustion over every base subset."""
    return len(covering_bases(bs, collection, limit=2)) == 1


def maximal_inexact_oracle(bs: BaseSubset):
    """Every maximal inexact subset, by exhaustion over the universe.

    An inexact collection grows to the intersection of the home subset
    with any other covering subset, so the maximal inexact subsets are
    exactly the maximal proper intersections.
    """
    space = bs.base.space
    gr = grassmannian(space, bs.k)
    home = member_mask(bs, bs.index_sets, gr)
    seen = set()
    for cover in subset_universe(space, bs.k):
        overlap = home & cover
        if overlap != home:
            seen.add(overlap)
    keep = []
    for mask in sorted(seen, key=lambda m: -m.bit_count()):
        if not any(mask | kept == kept for kept in keep):
            keep.append(mask)
    collections = (
        frozenset(bs.index_set_of(gr.elements[b]) for b in _mask_bits(mask)) for mask in keep
    )
    return tuple(sorted(collections, key=_collection_key))


def unpinned_exact_example(bs: BaseSubset):
    """An exact collection that the pin test cannot confirm.

    Every member avoiding position 0 plus one member through it: for
    1 <= k < n - 1 the meet at 0 is that whole member rather than the
    point, yet only one base subset covers the collection.
    """
    if not 1 <= bs.k < bs.base.space.n - 1:
        raise DimensionError("needs a layer with 1 <= k < n - 1")
    extra = min(bs.select(plus=(0,)), key=sorted)
    return type1_members(bs, 0) | frozenset((extra,))


def complete_to_base(space: SymplecticSpace, pairs=(), singles=()) -> SymplecticBase:
    """Grow a partial symplectic configuration into a full base.

    pairs holds (x, y) with omega(x, y) nonzero; singles are isotropic.
    Every other inner product among the supplied vectors must vanish
    and the vectors must be independent.  Partners for the singles come
    from solving the form conditions directly; each solution is
    automatically independent because its single is orthogonal to
    everything already placed.
    """
    p = space.p
    d = space.dim
    pairs = [tuple(pair) for pair in pairs]
    singles = [tuple(v) for v in singles]
    while len(pairs) < space.n:
        if not singles:
            rows = [space.form_row(v) for pair in pairs for v in pair]
            singles.append(nullspace(tuple(rows), d, p)[0])
        first = singles.pop()
        rest = [v for pair in pairs for v in pair] + singles
        rows = [space.form_row(v) for v in (first, *rest)]
        partner = solve_particular(rows, (1,) + (0,) * len(rest), p, d)
        if partner is None:
            raise DegenerateParameterError("supplied vectors are not a symplectic configuration")
        pairs.append((first, partner))
    points = tuple(x for x, _ in pairs) + tuple(y for _, y in pairs)
    return SymplecticBase.from_points(space, points)


def common_base(space: SymplecticSpace, s: Subspace, u: Subspace) -> SymplecticBase:
    """A symplectic base spanning two given totally isotropic subspaces.

    Splits their sum into the shared part, symplectically paired
    complements and orthogonal leftovers, then completes to a base.
    """
    for target in (s, u):
        if not space.is_totally_isotropic(target):
            raise DimensionError("common base needs totally isotropic subspaces")
    p = space.p
    d = space.dim
    shared = s.intersect(u)
    left = extend_basis(shared.rows, s.rows, p, d)
    right = extend_basis(shared.rows, u.rows, p, d)
    pairs = []
    while True:
        hit = next(((x, y) for x in left for y in right if space.omega(x, y)), None)
        if hit is None:
            break
        x, y = hit
        left.remove(x)
        right.remove(y)
        y = vec_scale(pow(space.omega(x, y), -1, p), y, p)
        left = [vec_add(a, vec_scale(-space.omega(a, y), x, p), p) for a in left]
        right = [vec_add(b, vec_scale(-space.omega(x, b), y, p), p) for b in right]
        pairs.append((x, y))
    base = complete_to_base(space, pairs, list(shared.rows) + left + right)
    for target in (s, u):
        inside = [pt for pt in base.points if target.contains_vector(pt)]
        if Subspace.span(p, d, inside) != target:
            raise RuntimeError("completed base lost an input subspace")
    return base
