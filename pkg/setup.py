"""Build script: compiles the cycle-type counting kernel when Cython is available.

The package works without the extension (a pure-Python fallback is selected at
import time); the compiled kernel is what makes large stabilizer double sums
fast enough for the full verification suites.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "haarmoments._countkernel",
                ["src/haarmoments/_countkernel.pyx"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
