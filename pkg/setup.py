"""Build script.

The compiled kernel (leibalg._speedups) is optional: when Cython or a C
compiler is missing the package installs anyway and falls back to the pure
Python kernels at import time.  Set LEIBALG_NO_EXTENSION=1 to skip the
extension on purpose.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # compiler missing, etc.
            print(f"leibalg: skipping optional extension ({exc})")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"leibalg: skipping optional extension {ext.name} ({exc})")


ext_modules = []
if not os.environ.get("LEIBALG_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("leibalg._speedups", ["src/leibalg/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        print("leibalg: Cython not available, building without the compiled kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
