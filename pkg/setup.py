"""Build script. The Cython extension is optional: a plain install without
Cython (or without a C compiler) falls back to the numpy reference backend
at import time."""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "series_summa._series_core",
                ["src/series_summa/_series_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
