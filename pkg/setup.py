"""Build script: compiles the optional exact-linear-algebra accelerator.

The package works without the extension (pure-Python kernels are selected at
import time), so a failed compile only costs speed.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the compiled kernels failed ({exc!r}); "
            "spechtcoho will fall back to the pure-Python kernels.",
            file=sys.stderr,
        )


def extensions():
    from Cython.Build import cythonize

    ext = Extension(
        "spechtcoho.intlinalg._fastkernels",
        ["src/spechtcoho/intlinalg/_fastkernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
