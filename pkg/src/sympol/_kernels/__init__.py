"""Kernel backend selection.

The compiled backend is preferred when the extension built; setting
SYMPOL_PURE=1 in the environment forces the pure Python reference
implementation.  Both expose the same four functions and agree bit for
bit on results.
"""

import os

from sympol._kernels import pure

if os.environ.get("SYMPOL_PURE"):
    _impl = pure
else:
    try:
        from sympol._kernels import fast as _impl
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND
rref = _impl.rref
residue = _impl.residue
nullspace = _impl.nullspace
intersect = _impl.intersect
