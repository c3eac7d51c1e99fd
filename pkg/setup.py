"""Build script for the optional compiled kernel extension.

The package is pure Python plus one Cython extension holding the scoring
and character-scan hot loops. The extension is optional: if Cython or a C
compiler is unavailable the build falls back to a pure-Python install and
``kicaumine._kernels`` selects the interpreted implementations at import.
"""

import logging

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

log = logging.getLogger("kicaumine.setup")


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            log.warning("skipping compiled kernels (%s); pure-Python fallback will be used", exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            log.warning("failed to build %s (%s); pure-Python fallback will be used", ext.name, exc)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        log.warning("Cython not available; building without compiled kernels")
        return []
    return cythonize(
        [
            Extension(
                "kicaumine._kernels._native",
                ["src/kicaumine/_kernels/_native.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
