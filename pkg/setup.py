import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or a compiler) the
# package falls back to the pure-Python kernels at import time.
ext_modules = []
if os.environ.get("PIVOTWALK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "pivotwalk._kernels",
                    ["src/pivotwalk/_kernels.pyx"],
                    # no fast-math / contraction: results must match the
                    # Python kernels bit for bit
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
