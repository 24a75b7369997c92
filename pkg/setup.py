"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so any build failure here downgrades
to a warning instead of aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator if possible, warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the hypnorm._kernels._ck accelerator failed ({exc}); "
            "falling back to the pure-Python kernels.",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; skipping accelerator build.", file=sys.stderr)
        return []
    ext = Extension(
        "hypnorm._kernels._ck",
        ["src/hypnorm/_kernels/_ck.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
