"""Isotropic Grassmannians: enumeration, adjacency, stars and tops.

G_k collects the totally isotropic subspaces of projective dimension k,
sorted by the global row-matrix ordering; downstream code refers to its
elements by index.  Enumeration works level by level: each isotropic
subspace of rank j is extended by every point of its perp not already
inside, and duplicates are removed by canonical form.  Results can be
cached on disk keyed by (n, p, k); the larger grids are dominated by
this enumeration.

Two pdim-k subspaces are adjacent when their intersection has pdim
k - 1 (for k = 0 this means being distinct), and ortho-adjacent when,
in addition, each lies in the perp of the other.  The star of
M in G_(k-1) consists of all members of G_k through M; total isotropy
makes the [M, M-perp] interval condition automatic.  The top of N in
G_(k+1) consists of all its pdim-k subspaces.
"""

from __future__ import annotations

import os
from functools import lru_cache

from sympol import _kernels
from sympol.errors import DimensionError, FeasibilityError, SchemaError
from sympol.linalg import Subspace
from sympol.serialize import atomic_write_json, load_json
from sympol.space import SymplecticSpace

CLIQUE_GRID = ((2, 2), (3, 2))


class Grassmannian:
    """Indexed family of all totally isotropic pdim-k subspaces."""

    __slots__ = ("space", "k", "elements", "_index", "_pair_cache")

    def __init__(self, space, k, elements):
        self.space = space
        self.k = k
        self.elements = tuple(elements)
        self._index = {s.rows: i for i, s in enumerate(self.elements)}
        self._pair_cache = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index_of(self, s: Subspace):
        """Index of a subspace, or None when not totally isotropic pdim-k."""
        return self._index.get(s.rows)

    def pair_relation(self, i, j):
        """(adjacent, ortho_adjacent) for two element indices, cached."""
        if i == j:
            return (False, False)
        key = (i, j) if i < j else (j, i)
        rel = self._pair_cache.get(key)
        if rel is None:
            s, u = self.elements[key[0]], self.elements[key[1]]
            adj = adjacent(s, u)
            rel = (adj, adj and _mutually_orthogonal(self.space, s, u))
            self._pair_cache[key] = rel
        return rel


def _mutually_orthogonal(space, s, u):
    for a in s.rows:
        for b in u.rows:
            if space.omega(a, b):
                return False
    return True


def adjacent(s: Subspace, u: Subspace) -> bool:
    """Intersection has pdim one less; distinct points count as adjacent."""
    if s.pdim != u.pdim:
        raise DimensionError("adjacency needs equal projective dimensions")
    if s.pdim == 0:
        return s != u
    if s == u:
        return False
    rows = _kernels.intersect(s.rows, u.rows, s.ambient, s.p)
    return len(rows) == s.vdim - 1


def ortho_adjacent(space: SymplecticSpace, s: Subspace, u: Subspace) -> bool:
    """Adjacent and each inside the perp of the other."""
    return adjacent(s, u) and _mutually_orthogonal(space, s, u)


def _levelwise(space, k, isotropic=True):
    p, d = space.p, space.dim
    level = [Subspace.empty(p, d)]
    for _ in range(k + 1):
        nxt = {}
        for s in level:
            if isotropic:
                candidates = space.perp(s).points() if s.rows else space.all_points()
            else:
                candidates = space.all_points()
            for q in candidates:
                if s.rows and s.contains_vector(q):
                    continue
                rows = _kernels.rref(s.rows + (q,), d, p)
                nxt.setdefault(rows, Subspace(p, d, rows))
        level = list(nxt.values())
    return tuple(sorted(level, key=lambda s: s.rows))


def all_subspaces(space: SymplecticSpace, k):
    """Every pdim-k subspace of the ambient projective space (oracle)."""
    return _levelwise(space, k, isotropic=False)


def default_cache_dir():
    env = os.environ.get("SYMPOL_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "sympol")


def _cache_path(cache_dir, space, k):
    return os.path.join(cache_dir, f"grassmannian-n{space.n}-p{space.p}-k{k}.json")


def _load_cached(space, k, cache_dir):
    path = _cache_path(cache_dir, space, k)
    if not os.path.exists(path):
        return None
    try:
        obj = load_json(path)
        if obj.get("space") != space.header() or obj.get("k") != k:
            return None
        elements = [
            Subspace(space.p, space.dim, tuple(tuple(int(x) for x in r) for r in rows))
            for rows in obj["elements"]
        ]
    except (SchemaError, KeyError, TypeError, ValueError):
        return None
    return elements


@lru_cache(maxsize=None)
def _grassmannian_memo(space, k, cache_dir):
    if not 0 <= k <= space.n - 1:
        raise DimensionError(f"k={k} outside 0..{space.n - 1}")
    if cache_dir:
        cached = _load_cached(space, k, cache_dir)
        if cached is not None:
            return Grassmannian(space, k, cached)
    g = Grassmannian(space, k, _levelwise(space, k))
    if cache_dir:
        atomic_write_json(
            _cache_path(cache_dir, space, k),
            {
                "space": space.header(),
                "k": k,
                "elements": [[list(r) for r in s.rows] for s in g.elements],
            },
        )
    return g


def grassmannian(space: SymplecticSpace, k, cache_dir=None, use_disk=True) -> Grassmannian:
    """G_k for the space, memoized; disk cache is keyed by (n, p, k)."""
    cd = (cache_dir or default_cache_dir()) if use_disk else None
    return _grassmannian_memo(space, k, cd)


def grassmannian_size(n, p, k):
    """Closed form: prod_{i=0..k} (p^(2n-2i) - 1) / (p^(i+1) - 1)."""
    num = 1
    den = 1
    for i in range(k + 1):
        num *= p ** (2 * n - 2 * i) - 1
        den *= p ** (i + 1) - 1
    assert num % den == 0
    return num // den


def hyperplanes_of(s: Subspace):
    """All subspaces of s with pdim one less, canonical and sorted."""
    m = s.vdim
    if m == 0:
        raise DimensionError("the empty subspace has no hyperplanes")
    p = s.p
    out = set()
    for phi in Subspace.full(p, m).points():
        coeffs = _kernels.nullspace((phi,), m, p)
        vecs = [
            tuple(sum(c[i] * s.rows[i][j] for i in range(m)) % p for j in range(s.ambient))
            for c in coeffs
        ]
        out.add(_kernels.rref(vecs, s.ambient, p))
    return tuple(Subspace(p, s.ambient, rows) for rows in sorted(out))


@lru_cache(maxsize=None)
def star_table(space: SymplecticSpace, k, cache_dir=None):
    """For each index of M in G_(k-1), the indices of its star in G_k."""
    if k < 1:
        raise DimensionError("stars need k >= 1")
    g_low = grassmannian(space, k - 1, cache_dir=cache_dir)
    g_high = grassmannian(space, k, cache_dir=cache_dir)
    table = [[] for _ in range(len(g_low))]
    for si, s in enumerate(g_high.elements):
        for h in hyperplanes_of(s):
            table[g_low.index_of(h)].append(si)
    return tuple(tuple(row) for row in table)


def star(space: SymplecticSpace, m: Subspace, k, cache_dir=None):
    """All members of G_k through m, for m in G_(k-1)."""
    g_low = grassmannian(space, k - 1, cache_dir=cache_dir)
    g_high = grassmannian(space, k, cache_dir=cache_dir)
    mi = g_low.index_of(m)
    if mi is None:
        raise DimensionError("star vertex must be totally isotropic of pdim k-1")
    return tuple(g_high.elements[i] for i in star_table(space, k, cache_dir)[mi])


def top(space: SymplecticSpace, n_sub: Subspace, k, cache_dir=None):
    """All pdim-k subspaces of n_sub, for n_sub in G_(k+1)."""
    if n_sub.pdim != k + 1:
        raise DimensionError("top vertex must have pdim k+1")
    if grassmannian(space, k + 1, cache_dir=cache_dir).index_of(n_sub) is None:
        raise DimensionError("top vertex must be totally isotropic")
    return hyperplanes_of(n_sub)


def interval(space: SymplecticSpace, m: Subspace, n_sub: Subspace, k, cache_dir=None):
    """Members of G_k between m (pdim k-1) and n_sub (pdim k+1)."""
    return tuple(s for s in top(space, n_sub, k, cache_dir=cache_dir) if s.contains(m))


@lru_cache(maxsize=None)
def _adjacency_masks_memo(space, k, cache_dir):
    g = grassmannian(space, k, cache_dir=cache_dir)
    nverts = len(g)
    adj = [0] * nverts
    ortho = [0] * nverts
    for i in range(nverts):
        for j in range(i + 1, nverts):
            a, o = g.pair_relation(i, j)
            if a:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            if o:
                ortho[i] |= 1 << j
                ortho[j] |= 1 << i
    return tuple(adj), tuple(ortho)


def adjacency_masks(space, k, cache_dir=None):
    """(adjacency, ortho-adjacency) bitmask rows over G_k, both cached.

    Bit j of row i is set when elements i and j stand in the relation;
    diagonals stay clear.
    """
    return _adjacency_masks_memo(space, k, cache_dir)


def maximal_adjacency_cliques(space: SymplecticSpace, k, cache_dir=None):
    """All maximal cliques of the adjacency graph on G_k, as index sets.

    Brute force Bron-Kerbosch with pivoting on bitmask neighbourhoods;
    gated to the small grid.
    """
    if (space.n, space.p) not in CLIQUE_GRID:
        raise FeasibilityError(f"clique search supported only for (n, p) in {CLIQUE_GRID}")
    nverts = len(grassmannian(space, k, cache_dir=cache_dir))
    adj = adjacency_masks(space, k, cache_dir)[0]
    out = []

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def expand(r, p_mask, x_mask):
        if not p_mask and not x_mask:
            out.append(r)
            return
        pivot = -1
        best = -1
        for u in bits(p_mask | x_mask):
            c = (p_mask & adj[u]).bit_count()
            if c > best:
                best = c
                pivot = u
        for v in bits(p_mask & ~adj[pivot]):
            vb = 1 << v
            expand(r | vb, p_mask & adj[v], x_mask & adj[v])
            p_mask &= ~vb
            x_mask |= vb
    expand(0, (1 << nverts) - 1, 0)
    return sorted((frozenset(bits(r)) for r in out), key=sorted)


def star_index_sets(space, k, cache_dir=None):
    """Stars of G_k as index sets (for clique comparison).

    At k = 0 the only star is the one over the zero subspace, which
    is the whole point layer.
    """
    if k == 0:
        return [frozenset(range(len(grassmannian(space, 0, cache_dir=cache_dir))))]
    return sorted((frozenset(row) for row in star_table(space, k, cache_dir)), key=sorted)


def top_index_sets(space, k, cache_dir=None):
    """Tops of G_k as index sets; empty above the top rank."""
    if k + 1 > space.n - 1:
        return []
    g_low = grassmannian(space, k, cache_dir=cache_dir)
    g_high = grassmannian(space, k + 1, cache_dir=cache_dir)
    out = []
    for s in g_high.elements:
        out.append(frozenset(g_low.index_of(h) for h in hyperplanes_of(s)))
    return sorted(out, key=sorted)
