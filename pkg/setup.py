"""Build script for the optional compiled core.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile is downgraded to a warning.
"""

import sys

from setuptools import Extension, setup


def _extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError as exc:
        print(f"relkernel: Cython/numpy unavailable ({exc}); "
              "building without the compiled core", file=sys.stderr)
        return []
    ext = Extension(
        "relkernel._core",
        ["src/relkernel/_core.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


try:
    setup(ext_modules=_extensions())
except SystemExit:
    raise
except Exception as exc:  # compiler missing, header mismatch, ...
    print(f"relkernel: compiled core build failed ({exc}); "
          "retrying as pure Python", file=sys.stderr)
    setup(ext_modules=[])
