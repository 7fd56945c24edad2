"""Build script: compiles the optional word-kernel extension.

The package is pure Python; orelab._wordcore is a Cython speedup for the
hot word-scan kernels. If Cython or a C compiler is missing (or
ORELAB_NO_EXT=1), installation proceeds without it and orelab falls back
to the pure-Python kernels at import time.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: skipping compiled kernels ({exc}); pure-Python kernels will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); pure-Python kernels will be used")


ext_modules = []
if os.environ.get("ORELAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/orelab/_wordcore.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython not available; pure-Python kernels will be used")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
