"""Build script: compiles the optional speedup extension.

The package works without the extension (a pure-Python fallback is selected
at import time); the build therefore tolerates a missing Cython or a
failing compiler instead of blocking installation.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lsckc/_speedups.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
