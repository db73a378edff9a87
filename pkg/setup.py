"""Build hook: compiles the geometry extension when Cython is available.

The package is fully functional without it (pure-Python kernels take over),
so any build failure here should be treated as "skip the extension", not a
broken install. Set TINI_NO_EXT=1 to skip the compile on purpose.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("TINI_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "tiniscript.sim._geomfast",
                    ["src/tiniscript/sim/_geomfast.pyx"],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
