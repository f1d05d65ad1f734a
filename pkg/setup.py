"""Build script for the optional compiled core.

The package is pure Python; the `fsmcheck._core._speed` extension is a
drop-in accelerator for the hot search loops. If Cython or a C compiler
is unavailable the build degrades to the pure-Python implementation.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the accelerator if possible, otherwise keep going."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            sys.stderr.write(f"fsmcheck: skipping compiled core ({exc})\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"fsmcheck: skipping {ext.name} ({exc})\n")


def extensions():
    if os.environ.get("FSMCHECK_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("fsmcheck._core._speed", ["src/fsmcheck/_core/_speed.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
