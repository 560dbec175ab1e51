"""Build script for the optional compiled kernels.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes the hot paths faster.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ghzw_squeezing._kernels",
                ["src/ghzw_squeezing/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )

setup(
    ext_modules=ext_modules,
    # repeated here so legacy (pre-PEP 660) setup.py code paths see the src layout
    package_dir={"": "src"},
    packages=["ghzw_squeezing"],
)
