"""Build hook for the optional compiled matcher engine.

The matcher VM ships in two forms: a Cython extension (fast path) and a
pure-Python twin.  If Cython or a C compiler is unavailable the extension
is skipped and the package installs with the pure-Python engine only;
``smellex.matcher`` picks whichever is importable at runtime.

Set SMELLEX_NO_EXTENSION=1 to force a pure-Python install.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install over the extension; fall back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as err:  # compiler missing, etc.
            self._warn(err)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as err:
            self._warn(err)

    @staticmethod
    def _warn(err):
        print(
            "WARNING: could not build the compiled matcher engine (%s); "
            "falling back to the pure-Python engine" % err,
            file=sys.stderr,
        )


ext_modules = []
if os.environ.get("SMELLEX_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/smellex/matcher/_engine_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
