"""Build script for the optional compiled kernels.

The package is fully functional without the extension; scoring falls back to
numpy implementations selected at import time. Compilation failures are
therefore downgraded to a warning instead of aborting the install.
"""

import warnings

from setuptools import setup


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        warnings.warn(f"compiled kernels skipped: {exc}")
        return []
    from setuptools import Extension

    ext = Extension(
        "evidesk.kernels._ckernels",
        sources=["src/evidesk/kernels/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    try:
        return cythonize([ext], language_level=3)
    except Exception as exc:
        warnings.warn(f"compiled kernels skipped: {exc}")
        return []


setup(ext_modules=_extensions())
