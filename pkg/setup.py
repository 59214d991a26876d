"""Build script: compiles the optional Cython kernel twin when Cython is available.

The package is fully functional without the extension; `flatcover.kernel`
falls back to the pure-Python implementation at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension best-effort; a failure must not break the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping optional extension build ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping optional extension {ext.name} ({exc})")


def extensions():
    import os

    if not os.path.exists("src/flatcover/_kernel_cy.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - pure-python install
        return []
    from setuptools import Extension

    ext = Extension(
        "flatcover._kernel_cy",
        sources=["src/flatcover/_kernel_cy.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
