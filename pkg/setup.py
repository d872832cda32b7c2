"""Build script.  The compiled kernel backend is optional: if Cython or a
C compiler is unavailable the package installs with the pure Python
backend only, selected automatically at import time."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SYMPOL_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("sympol._kernels.fast", ["src/sympol/_kernels/fast.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
