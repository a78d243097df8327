"""Builds the optional compiled summation kernel.

Without Cython or a C compiler the package installs pure-Python and
``ramanujan_3f2.kernel`` falls back to ``_series_py``.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("RAMANUJAN_3F2_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "ramanujan_3f2._series_c",
                    ["src/ramanujan_3f2/_series_c.pyx"],
                    # no -ffast-math: it would break the compensated sum
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
