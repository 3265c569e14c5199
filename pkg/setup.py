"""Build script: compiles the optional Cython normal-form kernel.

The package is fully functional without the extension (a pure-Python twin of
the kernel is selected at import time), so any failure here degrades to the
fallback instead of breaking the install.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ldkex/braid/_nf_cy.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"ldkex: skipping Cython kernel ({exc!r}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
