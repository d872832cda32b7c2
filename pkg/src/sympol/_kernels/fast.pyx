# cython: boundscheck=False, wraparound=False, cdivision=True
"""Row reduction kernels over GF(p), compiled backend.

Mirrors sympol._kernels.pure; see that module for the canonical form
conventions.  Inputs larger than the fixed C buffers fall back to the
pure implementation (never hit by the supported size grid).
"""

from sympol._kernels import pure as _pure

BACKEND = "fast"

# fixed C buffer bound; intersect needs 2 * ambient columns
_CAP = 96


cdef int _inv_mod(int a, int p):
    cdef int k
    for k in range(1, p):
        if (a * k) % p == 1:
            return k
    return 0


def rref(rows, width, p):
    """Reduced row echelon form of the given rows."""
    cdef int nr = len(rows)
    cdef int w = width
    cdef int pp = p
    if nr > _CAP or w > _CAP:
        return _pure.rref(rows, width, p)
    cdef int mat[96][96]
    cdef int i, j, c, r, piv, f, g, tmp
    i = 0
    for row in rows:
        j = 0
        for x in row:
            mat[i][j] = x
            j += 1
        i += 1
    r = 0
    for c in range(w):
        piv = -1
        for i in range(r, nr):
            if mat[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, w):
                tmp = mat[r][j]
                mat[r][j] = mat[piv][j]
                mat[piv][j] = tmp
        f = mat[r][c]
        if f != 1:
            f = _inv_mod(f, pp)
            for j in range(c, w):
                mat[r][j] = (mat[r][j] * f) % pp
        for i in range(nr):
            if i != r and mat[i][c] != 0:
                g = mat[i][c]
                for j in range(c, w):
                    tmp = (mat[i][j] - g * mat[r][j]) % pp
                    if tmp < 0:
                        tmp += pp
                    mat[i][j] = tmp
        r += 1
        if r == nr:
            break
    return tuple(tuple(mat[i][j] for j in range(w)) for i in range(r))


def residue(vec, rows, p):
    """Reduce vec against canonical rows; zero iff vec is in their span."""
    cdef int w = len(vec)
    cdef int nr = len(rows)
    cdef int pp = p
    if w > _CAP or nr > _CAP:
        return _pure.residue(vec, rows, p)
    cdef int v[96]
    cdef int mat[96][96]
    cdef int pivots[96]
    cdef int i, j, c, f, tmp
    j = 0
    for x in vec:
        v[j] = x
        j += 1
    i = 0
    for row in rows:
        j = 0
        for x in row:
            mat[i][j] = x
            j += 1
        c = 0
        while mat[i][c] == 0:
            c += 1
        pivots[i] = c
        i += 1
    for i in range(nr):
        c = pivots[i]
        f = v[c]
        if f != 0:
            for j in range(c, w):
                tmp = (v[j] - f * mat[i][j]) % pp
                if tmp < 0:
                    tmp += pp
                v[j] = tmp
    return tuple(v[j] for j in range(w))


def nullspace(rows, width, p):
    """Canonical basis of {x : A x^T = 0} for A given by rows."""
    red = rref(rows, width, p)
    pivots = []
    for row in red:
        c = 0
        while not row[c]:
            c += 1
        pivots.append(c)
    pivot_set = set(pivots)
    basis = []
    for f in range(width):
        if f in pivot_set:
            continue
        v = [0] * width
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][f]) % p
        basis.append(v)
    return rref(basis, width, p)


def intersect(rows_a, rows_b, width, p):
    """Canonical basis of the intersection of two row spaces."""
    block = [list(r) + list(r) for r in rows_a]
    zeros = [0] * width
    block += [list(r) + zeros for r in rows_b]
    red = rref(block, 2 * width, p)
    out = []
    for row in red:
        if any(row[:width]):
            continue
        out.append(row[width:])
    return tuple(tuple(r) for r in out)
