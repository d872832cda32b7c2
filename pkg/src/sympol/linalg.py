"""Projective subspaces of PG(d-1, p) with exact GF(p) arithmetic.

Vectors are tuples of ints in range(p).  A projective point is a nonzero
vector scaled so that its first nonzero entry is 1; this representative
is unique and doubles as the single row of the point's canonical matrix.

A Subspace is an immutable value identified by its reduced row echelon
matrix, so equality, hashing and the global ordering (row-major
lexicographic comparison of canonical matrices) are structural.  The
empty subspace has projective dimension -1 and is a first-class value.
"""

from __future__ import annotations

from itertools import product

from sympol import _kernels
from sympol.errors import DimensionError


def normalize_point(vec, p):
    """Scale a nonzero vector so its first nonzero entry is 1."""
    for x in vec:
        if x:
            if x == 1:
                return tuple(vec)
            inv = _kernels.pure.inverses(p)[x]
            return tuple((inv * a) % p for a in vec)
    raise ValueError("zero vector is not a projective point")


def vec_add(u, v, p):
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_scale(c, v, p):
    return tuple((c * a) % p for a in v)


class Subspace:
    """A subspace of GF(p)^ambient in canonical row echelon form."""

    __slots__ = ("p", "ambient", "rows", "_hash", "_points")

    def __init__(self, p, ambient, rows):
        # rows must already be canonical; use Subspace.span otherwise
        self.p = p
        self.ambient = ambient
        self.rows = rows
        self._hash = hash((p, ambient, rows))
        self._points = None

    @classmethod
    def span(cls, p, ambient, vectors) -> "Subspace":
        """Canonical subspace spanned by arbitrary vectors."""
        vectors = tuple(vectors)
        for v in vectors:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in ambient {ambient}")
        return cls(p, ambient, _kernels.rref(vectors, ambient, p))

    @classmethod
    def empty(cls, p, ambient) -> "Subspace":
        return cls(p, ambient, ())

    @classmethod
    def full(cls, p, ambient) -> "Subspace":
        rows = tuple(tuple(1 if j == i else 0 for j in range(ambient)) for i in range(ambient))
        return cls(p, ambient, rows)

    @classmethod
    def from_point(cls, p, point) -> "Subspace":
        return cls(p, len(point), (normalize_point(point, p),))

    @property
    def vdim(self) -> int:
        return len(self.rows)

    @property
    def pdim(self) -> int:
        """Projective dimension; -1 for the empty subspace."""
        return len(self.rows) - 1

    def _check_compatible(self, other):
        if self.p != other.p or self.ambient != other.ambient:
            raise DimensionError(
                f"incompatible subspaces: GF({self.p})^{self.ambient} vs GF({other.p})^{other.ambient}"
            )

    def contains_vector(self, vec) -> bool:
        if len(vec) != self.ambient:
            raise DimensionError(f"vector of length {len(vec)} in ambient {self.ambient}")
        vec = tuple(x % self.p for x in vec)
        return not any(_kernels.residue(vec, self.rows, self.p))

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        if other.vdim > self.vdim:
            return False
        return all(self.contains_vector(r) for r in other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        rows = _kernels.intersect(self.rows, other.rows, self.ambient, self.p)
        return Subspace(self.p, self.ambient, rows)

    def plus(self, other: "Subspace") -> "Subspace":
        """Span of the union (the projective join)."""
        self._check_compatible(other)
        rows = _kernels.rref(self.rows + other.rows, self.ambient, self.p)
        return Subspace(self.p, self.ambient, rows)

    def points(self):
        """All projective points, sorted by the global ordering."""
        if self._points is None:
            p, rows = self.p, self.rows
            pts = []
            for i, base in enumerate(rows):
                # leading coefficient 1 on row i makes each point appear once
                tail = rows[i + 1 :]
                for coeffs in product(range(p), repeat=len(tail)):
                    v = list(base)
                    for c, row in zip(coeffs, tail):
                        if c:
                            v = [(a + c * b) % p for a, b in zip(v, row)]
                    pts.append(normalize_point(v, p))
            self._points = tuple(sorted(pts))
        return self._points

    def sort_key(self):
        return self.rows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        self._check_compatible(other)
        return self.rows < other.rows

    def __le__(self, other):
        self._check_compatible(other)
        return self.rows <= other.rows

    def __repr__(self):
        return f"Subspace(p={self.p}, pdim={self.pdim}, rows={self.rows})"


def canonicalize(p, ambient, vectors) -> Subspace:
    """Spec name for Subspace.span."""
    return Subspace.span(p, ambient, vectors)


def intersect(s: Subspace, u: Subspace) -> Subspace:
    return s.intersect(u)


def span_sum(s: Subspace, u: Subspace) -> Subspace:
    return s.plus(u)


def contains(s: Subspace, vec) -> bool:
    return s.contains_vector(vec)


def enumerate_points(s: Subspace):
    return s.points()


def intersect_all(subspaces) -> Subspace:
    """Intersection of a nonempty family."""
    it = iter(subspaces)
    acc = next(it)
    for s in it:
        acc = acc.intersect(s)
    return acc


def solve_particular(rows, rhs, p, width):
    """One solution x of A x^T = rhs, or None; free coordinates are 0."""
    aug = [tuple(r) + (b % p,) for r, b in zip(rows, rhs)]
    red = _kernels.rref(aug, width + 1, p)
    x = [0] * width
    for row in red:
        c = 0
        while not row[c]:
            c += 1
        if c == width:
            return None
        x[c] = row[width]
    return tuple(x)


def extend_basis(inner_rows, outer_rows, p, width):
    """Vectors from outer_rows completing span(inner_rows) to span(outer_rows).

    Returns the reduced residues, which are independent modulo the inner
    span and lie in the outer span.
    """
    acc = _kernels.rref(inner_rows, width, p)
    out = []
    for v in outer_rows:
        r = _kernels.residue(v, acc, p)
        if any(r):
            out.append(r)
            acc = _kernels.rref(acc + (r,), width, p)
    return out
