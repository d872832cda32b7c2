"""Symplectic bases of the polar space and maps between point sets.

A symplectic base is a family of 2n projective points spanning the whole
space such that each point is non-orthogonal to exactly one other; the
partner assignment sigma is a fixed-point-free involution of the index
set.  Scaling representatives never changes the structure, so bases are
compared by their sorted point tuples.

Bases are generated three independent ways: directly from the standard
coordinate frame, as images under random products of symplectic
transvections, and by exhaustive backtracking over point indices.  The
backtracking count is cross-checked in the tests against the closed form
|Sp(2n, p)| / ((p - 1)^n 2^n n!) and against a group-orbit sweep.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import factorial

from sympol import _kernels
from sympol.errors import (
    ArityError,
    DegenerateParameterError,
    FeasibilityError,
    MapCheckError,
    RecognitionError,
    SpaceMismatchError,
)
from sympol.linalg import normalize_point, vec_add, vec_scale
from sympol.space import SymplecticSpace

BASE_ENUMERATION_GRID = ((2, 2), (2, 3), (3, 2))


class SymplecticBase:
    """2n points with a fixed-point-free non-orthogonality pairing."""

    __slots__ = ("space", "points", "sigma", "_key")

    def __init__(self, space, points, sigma):
        self.space = space
        self.points = tuple(points)
        self.sigma = tuple(sigma)
        self._key = tuple(sorted(self.points))

    @classmethod
    def standard(cls, space: SymplecticSpace) -> "SymplecticBase":
        """The coordinate frame e_1..e_n, f_1..f_n with sigma i <-> n + i."""
        d = space.dim
        pts = tuple(tuple(1 if j == i else 0 for j in range(d)) for i in range(d))
        return cls(space, pts, standard_sigma(space.n))

    @classmethod
    def from_points(cls, space, points) -> "SymplecticBase":
        """Build from points alone; sigma is recovered by recognition."""
        pts = tuple(normalize_point(x, space.p) for x in points)
        return cls(space, pts, recognize(space, pts))

    def key(self):
        """Canonical identity: the sorted point tuple (sigma is implied)."""
        return self._key

    def partner(self, i: int):
        return self.points[self.sigma[i]]

    def __eq__(self, other):
        return (
            isinstance(other, SymplecticBase)
            and self.space == other.space
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.space, self._key))

    def __repr__(self):
        return f"SymplecticBase(space={self.space!r}, points={self.points})"


def standard_sigma(n):
    return tuple(range(n, 2 * n)) + tuple(range(n))


def recognize(space: SymplecticSpace, points):
    """Return sigma if the points form a symplectic base, else raise.

    Raises ArityError on a wrong-sized family and RecognitionError with
    reason 'dependent', 'no partner' or 'partner not unique' otherwise.
    """
    d = space.dim
    if len(points) != d:
        raise ArityError(f"expected {d} points, got {len(points)}")
    pts = [normalize_point(x, space.p) for x in points]
    if len(_kernels.rref(pts, d, space.p)) != d:
        raise RecognitionError("dependent")
    sigma = []
    for i, x in enumerate(pts):
        partners = [j for j, y in enumerate(pts) if j != i and space.omega(x, y)]
        if not partners:
            raise RecognitionError("no partner", f"index {i}")
        if len(partners) > 1:
            raise RecognitionError("partner not unique", f"index {i}")
        sigma.append(partners[0])
    # symmetry of non-orthogonality makes sigma an involution, and
    # omega(x, x) = 0 makes it fixed-point-free; assert both anyway
    assert all(sigma[sigma[i]] == i and sigma[i] != i for i in range(d))
    return tuple(sigma)


def is_symplectic_base(space, points) -> bool:
    try:
        recognize(space, points)
    except (ArityError, RecognitionError, ValueError):
        return False
    return True


def perturb_one(base: SymplecticBase, i: int, c: int) -> SymplecticBase:
    """Replace p_i by p_i + c p_sigma(i); any c != 0 gives a new base."""
    p = base.space.p
    if c % p == 0:
        raise DegenerateParameterError("c = 0 reproduces the same base")
    pts = list(base.points)
    pts[i] = normalize_point(vec_add(pts[i], vec_scale(c, base.partner(i), p), p), p)
    out = SymplecticBase(base.space, pts, base.sigma)
    assert recognize(base.space, out.points) == base.sigma
    return out


def perturb_pair(base: SymplecticBase, i: int, j: int, c: int) -> SymplecticBase:
    """Replace p_i by p_i + c p_j and move p_sigma(j) to compensate.

    Requires j not in {i, sigma(i)} and c != 0.  The replacement for
    p_sigma(j) is the unique point of the line through p_sigma(i) and
    p_sigma(j) orthogonal to the new p_i; sigma is unchanged.
    """
    space = base.space
    p = space.p
    sigma = base.sigma
    if c % p == 0:
        raise DegenerateParameterError("c = 0 reproduces the same base")
    if j == i or j == sigma[i]:
        raise DegenerateParameterError("j must avoid i and sigma(i)")
    x_i, x_j = base.points[i], base.points[j]
    x_si, x_sj = base.points[sigma[i]], base.points[sigma[j]]
    w_i = space.omega(x_i, x_si)
    w_j = space.omega(x_j, x_sj)
    inv = _kernels.pure.inverses(p)
    lam = (-w_i * inv[(c * w_j) % p]) % p
    pts = list(base.points)
    pts[i] = normalize_point(vec_add(x_i, vec_scale(c, x_j, p), p), p)
    pts[sigma[j]] = normalize_point(vec_add(x_si, vec_scale(lam, x_sj, p), p), p)
    out = SymplecticBase(space, pts, sigma)
    assert recognize(space, out.points) == sigma
    return out


class PointMap:
    """An injective table from all points of one space to another.

    Spaces must share (n, p); two distinct space handles are still kept
    so source and target frames stay separate.
    """

    __slots__ = ("source", "target", "table", "_symplectic")

    def __init__(self, source, target, table):
        if (source.n, source.p) != (target.n, target.p):
            raise SpaceMismatchError(
                f"source (n={source.n}, p={source.p}) vs target (n={target.n}, p={target.p})"
            )
        if set(table) != set(source.all_points()):
            raise MapCheckError("table must cover every source point exactly once")
        if len(set(table.values())) != len(table):
            raise MapCheckError("table is not injective")
        tgt = set(target.all_points())
        if not set(table.values()) <= tgt:
            raise MapCheckError("table values must be target points")
        self.source = source
        self.target = target
        self.table = dict(table)
        self._symplectic = None

    @classmethod
    def identity(cls, space) -> "PointMap":
        return cls(space, space, {x: x for x in space.all_points()})

    @classmethod
    def from_matrix(cls, source, target, matrix) -> "PointMap":
        """Point map induced by an invertible matrix acting on rows."""
        table = {}
        for x in source.all_points():
            y = mat_apply(x, matrix, source.p)
            table[x] = normalize_point(y, source.p)
        return cls(source, target, table)

    def apply(self, point):
        return self.table[point]

    def apply_base(self, base: SymplecticBase) -> SymplecticBase:
        pts = [self.table[x] for x in base.points]
        return SymplecticBase.from_points(self.target, pts)

    def compose(self, other: "PointMap") -> "PointMap":
        """self after other."""
        return PointMap(other.source, self.target, {x: self.table[y] for x, y in other.table.items()})

    def inverse(self) -> "PointMap":
        if len(self.table) != len(self.target.all_points()):
            raise MapCheckError("only bijective point maps invert")
        return PointMap(self.target, self.source, {y: x for x, y in self.table.items()})

    def preserves_orthogonality(self) -> bool:
        """True when orthogonality is preserved in both directions."""
        if self._symplectic is None:
            pts = self.source.all_points()
            src, tgt = self.source, self.target
            ok = True
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    a = src.omega(pts[i], pts[j]) == 0
                    b = tgt.omega(self.table[pts[i]], self.table[pts[j]]) == 0
                    if a != b:
                        ok = False
                        break
                if not ok:
                    break
            self._symplectic = ok
        return self._symplectic

    def __eq__(self, other):
        return (
            isinstance(other, PointMap)
            and self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __repr__(self):
        return f"PointMap({self.source!r} -> {self.target!r}, {len(self.table)} points)"


def mat_apply(x, matrix, p):
    """Row vector times matrix."""
    d = len(matrix[0])
    return tuple(sum(x[i] * matrix[i][j] for i in range(len(x))) % p for j in range(d))


def mat_mul(a, b, p):
    return tuple(mat_apply(row, b, p) for row in a)


def transvection_matrix(space: SymplecticSpace, v, c):
    """Matrix of x -> x + c omega(x, v) v, a symplectic transvection."""
    d = space.dim
    fr = space.form_row(v)
    p = space.p
    return tuple(
        tuple((int(i == j) + c * fr[i] * v[j]) % p for j in range(d)) for i in range(d)
    )


def _transvection_stream(space, rng, count):
    pts = space.all_points()
    for _ in range(count):
        v = pts[rng.randrange(len(pts))]
        c = 1 if space.p == 2 else rng.randrange(1, space.p)
        yield v, c


def random_collineation(space: SymplecticSpace, seed) -> PointMap:
    """Seeded product of 6n symplectic transvections as a point map.

    Transvections preserve the form exactly, so the result preserves
    orthogonality in both directions; products of length at least 4n
    reach the whole group.
    """
    rng = random.Random(seed)
    d = space.dim
    m = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    for v, c in _transvection_stream(space, rng, 3 * d):
        m = mat_mul(m, transvection_matrix(space, v, c), space.p)
    return PointMap.from_matrix(space, space, m)


def random_base(space: SymplecticSpace, seed) -> SymplecticBase:
    """Image of the standard base under random_collineation(space, seed)."""
    rng = random.Random(seed)
    pts = [list(x) for x in SymplecticBase.standard(space).points]
    p = space.p
    for v, c in _transvection_stream(space, rng, 3 * space.dim):
        fr = space.form_row(v)
        for x in pts:
            w = sum(a * b for a, b in zip(fr, x)) % p
            if w:
                f = (c * w) % p
                for t in range(len(x)):
                    x[t] = (x[t] + f * v[t]) % p
    points = tuple(normalize_point(x, p) for x in pts)
    return SymplecticBase(space, points, standard_sigma(space.n))


def _require_enumerable(space):
    if (space.n, space.p) not in BASE_ENUMERATION_GRID:
        raise FeasibilityError(
            f"full base enumeration supported only for (n, p) in {BASE_ENUMERATION_GRID}"
        )


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=None)
def enumerate_all_bases(space: SymplecticSpace):
    """Every symplectic base exactly once, by index backtracking.

    Bases are produced as sorted lists of non-orthogonal index pairs;
    orthogonality between chosen pairs forces linear independence, so no
    rank checks are needed.
    """
    _require_enumerable(space)
    pts = space.all_points()
    masks = space.ortho_masks()
    npts = len(pts)
    full = (1 << npts) - 1
    n = space.n
    out = []

    def rec(pairs, orthoset, min_a):
        if len(pairs) == n:
            points = tuple(pts[a] for a, _ in pairs) + tuple(pts[b] for _, b in pairs)
            out.append(SymplecticBase(space, points, standard_sigma(n)))
            return
        cand_a = orthoset >> min_a << min_a
        for a in _bits(cand_a):
            above = full >> (a + 1) << (a + 1)
            for b in _bits(orthoset & ~masks[a] & above):
                rec(pairs + ((a, b),), orthoset & masks[a] & masks[b], a + 1)

    rec((), full, 0)
    return tuple(out)


def enumerate_bases_orbit(space: SymplecticSpace):
    """Orbit of the standard base under all transvections (oracle route).

    Returns the set of canonical index-pair keys; transvections generate
    the symplectic group, so the orbit is the full base set.
    """
    _require_enumerable(space)
    pts = space.all_points()
    index = space.point_index()
    p = space.p
    perms = []
    for v in pts:
        for c in range(1, p):
            mat = transvection_matrix(space, v, c)
            perms.append(tuple(index[normalize_point(mat_apply(x, mat, p), p)] for x in pts))

    def key_of(base):
        idx = [index[x] for x in base.points]
        n = space.n
        return tuple(sorted(tuple(sorted((idx[i], idx[n + i]))) for i in range(n)))

    start = key_of(SymplecticBase.standard(space))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for k in frontier:
            for perm in perms:
                moved = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in k))
                if moved not in seen:
                    seen.add(moved)
                    nxt.append(moved)
        frontier = nxt
    return seen


def base_key_pairs(space, base):
    """Canonical index-pair key matching enumerate_bases_orbit."""
    index = space.point_index()
    idx = [index[x] for x in base.points]
    s = base.sigma
    return tuple(sorted(tuple(sorted((idx[i], idx[s[i]]))) for i in range(space.dim) if i < s[i]))


def symplectic_group_order(n, p):
    """|Sp(2n, p)| = p^(n^2) prod_{i=1..n} (p^(2i) - 1)."""
    order = p ** (n * n)
    for i in range(1, n + 1):
        order *= p ** (2 * i) - 1
    return order


def expected_base_count(n, p):
    """Base count from the group order: stabilizers contribute
    (p - 1)^n scalings, 2^n in-pair swaps and n! pair permutations."""
    return symplectic_group_order(n, p) // ((p - 1) ** n * 2**n * factorial(n))
