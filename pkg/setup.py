"""Builds the optional compiled kernel extension.

The package works without it (wsnopt.kernels falls back to the numpy
implementation at import time), so the extension is skipped rather than
fatal when Cython is unavailable.
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
                "wsnopt.kernels._native",
                ["src/wsnopt/kernels/_native.pyx"],
                # -ffp-contract=off keeps float expressions bit-compatible
                # with the numpy fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
