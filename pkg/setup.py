"""Build script: compiles the optional Gibbs-sampling extension.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, cythonize failure, ...
            print(f"WARNING: extension build failed ({exc}); "
                  "falling back to the pure-Python kernel", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: building {ext.name} failed ({exc}); "
                  "falling back to the pure-Python kernel", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython unavailable; building without the compiled "
              "kernel", file=sys.stderr)
        return []
    ext = Extension(
        "lyricsim.topics._kernel",
        ["src/lyricsim/topics/_kernel.pyx"],
        # -ffp-contract=off: the compiled kernel must be bit-identical to the
        # pure-Python one, so FMA contraction has to stay disabled.
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
