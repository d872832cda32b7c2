"""The symplectic polar space of rank n over GF(p).

The ambient vector space is GF(p)^(2n) carrying the standard alternating
form with Gram matrix blocks [[0, I], [-I, 0]]: writing a vector as
(x_1..x_n, y_1..y_n), the form is sum(x_i y'_i - y_i x'_i).  Points of
the projective space PG(2n-1, p) are all isotropic; a subspace is
totally isotropic exactly when the form vanishes on it, which bounds its
projective dimension by n - 1.
"""

from __future__ import annotations

from functools import lru_cache

from sympol import _kernels
from sympol.errors import DimensionError, FeasibilityError
from sympol.linalg import Subspace, normalize_point

SUPPORTED_PRIMES = (2, 3, 5)


class SymplecticSpace:
    """Rank n symplectic space over GF(p) with the standard form."""

    __slots__ = ("n", "p", "dim", "gram", "_points", "_point_index", "_ortho_masks")

    def __init__(self, n, p):
        if n < 2:
            raise FeasibilityError(f"rank n={n} unsupported, need n >= 2")
        if p not in SUPPORTED_PRIMES:
            raise FeasibilityError(f"p={p} unsupported, need p in {SUPPORTED_PRIMES}")
        self.n = n
        self.p = p
        self.dim = 2 * n
        gram = [[0] * self.dim for _ in range(self.dim)]
        for i in range(n):
            gram[i][n + i] = 1
            gram[n + i][i] = p - 1
        self.gram = tuple(tuple(r) for r in gram)
        self._points = None
        self._point_index = None
        self._ortho_masks = None

    @staticmethod
    @lru_cache(maxsize=None)
    def standard(n, p) -> "SymplecticSpace":
        return SymplecticSpace(n, p)

    def header(self):
        return {"n": self.n, "p": self.p, "form": "standard"}

    def omega(self, x, y) -> int:
        """Value of the alternating form on two vectors."""
        n, p = self.n, self.p
        acc = 0
        for i in range(n):
            acc += x[i] * y[n + i] - x[n + i] * y[i]
        return acc % p

    def orthogonal(self, x, y) -> bool:
        return self.omega(x, y) == 0

    def form_row(self, x):
        """The functional y -> omega(x, y) as a coefficient vector."""
        n, p = self.n, self.p
        return tuple(x[n + i] % p for i in range(n)) + tuple((-x[i]) % p for i in range(n))

    def perp(self, s: Subspace) -> Subspace:
        """All vectors orthogonal to a subspace; pdim is 2n - 2 - pdim(s)."""
        self._check(s)
        funcs = tuple(self.form_row(r) for r in s.rows)
        rows = _kernels.nullspace(funcs, self.dim, self.p)
        return Subspace(self.p, self.dim, rows)

    def is_totally_isotropic(self, s: Subspace) -> bool:
        self._check(s)
        rows = s.rows
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if self.omega(rows[i], rows[j]):
                    return False
        return True

    def all_points(self):
        """Every point of PG(2n-1, p), sorted by the global ordering."""
        if self._points is None:
            self._points = Subspace.full(self.p, self.dim).points()
        return self._points

    def point_index(self):
        if self._point_index is None:
            self._point_index = {pt: i for i, pt in enumerate(self.all_points())}
        return self._point_index

    def ortho_masks(self):
        """Bitmask per point index of the points orthogonal to it."""
        if self._ortho_masks is None:
            pts = self.all_points()
            rows = [self.form_row(x) for x in pts]
            masks = []
            for fr in rows:
                m = 0
                p = self.p
                for j, y in enumerate(pts):
                    if sum(a * b for a, b in zip(fr, y)) % p == 0:
                        m |= 1 << j
                masks.append(m)
            self._ortho_masks = tuple(masks)
        return self._ortho_masks

    def _check(self, s: Subspace):
        if s.p != self.p or s.ambient != self.dim:
            raise DimensionError(
                f"subspace of GF({s.p})^{s.ambient} in space GF({self.p})^{self.dim}"
            )

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and self.n == other.n and self.p == other.p

    def __hash__(self):
        return hash((SymplecticSpace, self.n, self.p))

    def __repr__(self):
        return f"SymplecticSpace(n={self.n}, p={self.p})"


def normalize(space: SymplecticSpace, vec):
    return normalize_point(vec, space.p)
