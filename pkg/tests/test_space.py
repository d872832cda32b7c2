"""Form identities and perp behavior of the ambient space."""

import pytest

from sympol.errors import DimensionError, FeasibilityError
from sympol.linalg import Subspace
from sympol.space import SymplecticSpace


def unit(dim, i):
    return tuple(int(j == i) for j in range(dim))


def test_unsupported_parameters_rejected():
    with pytest.raises(FeasibilityError):
        SymplecticSpace(1, 2)
    with pytest.raises(FeasibilityError):
        SymplecticSpace(2, 4)


def test_form_is_alternating_and_antisymmetric(small_space):
    sp = small_space
    pts = sp.all_points()[:40]
    for x in pts:
        assert sp.omega(x, x) == 0
    for x in pts[:12]:
        for y in pts[:12]:
            assert (sp.omega(x, y) + sp.omega(y, x)) % sp.p == 0


def test_standard_pairing(small_space):
    sp = small_space
    n, d = sp.n, sp.dim
    for i in range(n):
        for j in range(n):
            assert sp.omega(unit(d, i), unit(d, n + j)) == (1 if i == j else 0)
            assert sp.omega(unit(d, i), unit(d, j)) == 0
            assert sp.omega(unit(d, n + i), unit(d, n + j)) == 0


def test_form_is_nondegenerate(small_space):
    sp = small_space
    for x in sp.all_points():
        assert any(v % sp.p for v in sp.form_row(x))


def test_point_count(small_space):
    sp = small_space
    expected = (sp.p ** sp.dim - 1) // (sp.p - 1)
    assert len(sp.all_points()) == expected
    assert len(sp.point_index()) == expected


def test_perp_dimensions_and_involution(small_space):
    sp = small_space
    s = Subspace.span(sp.p, sp.dim, [unit(sp.dim, 0), unit(sp.dim, 1)])
    perp = sp.perp(s)
    assert perp.vdim == sp.dim - s.vdim
    assert sp.perp(perp) == s
    for x in s.rows:
        for y in perp.rows:
            assert sp.omega(x, y) == 0


def test_total_isotropy(small_space):
    sp = small_space
    n, d = sp.n, sp.dim
    coords = Subspace.span(sp.p, d, [unit(d, i) for i in range(n)])
    assert sp.is_totally_isotropic(coords)
    paired = Subspace.span(sp.p, d, [unit(d, 0), unit(d, n)])
    assert not sp.is_totally_isotropic(paired)
    # pdim of a totally isotropic subspace is capped at n - 1
    assert coords.pdim == n - 1


def test_ortho_masks_match_form(small_space):
    sp = small_space
    pts = sp.all_points()
    masks = sp.ortho_masks()
    for i in range(0, len(pts), 7):
        for j in range(0, len(pts), 11):
            assert bool(masks[i] >> j & 1) == (sp.omega(pts[i], pts[j]) == 0)


def test_check_rejects_foreign_subspaces(small_space):
    sp = small_space
    with pytest.raises(DimensionError):
        sp.perp(Subspace.span(sp.p, sp.dim + 2, [unit(sp.dim + 2, 0)]))


def test_header_and_identity(small_space):
    sp = small_space
    assert sp.header() == {"n": sp.n, "p": sp.p, "form": "standard"}
    assert SymplecticSpace(sp.n, sp.p) == sp
    assert SymplecticSpace.standard(sp.n, sp.p) is SymplecticSpace.standard(sp.n, sp.p)
