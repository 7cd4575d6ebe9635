"""Build script: optionally compiles the exact-arithmetic kernels with Cython.

The package is pure Python.  ``src/stepcount/_kernels.py`` holds the hot inner
loops (rational Gauss-Jordan elimination and the exact simplex).  When Cython
and a C compiler are available, the same source file is compiled into the
extension module ``stepcount._kernels_c``; ``stepcount.backend`` picks the
compiled lane at import time and falls back to the interpreted module
otherwise, so a failed extension build never breaks the install.
"""

import pathlib
import shutil

from setuptools import setup


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    here = pathlib.Path(__file__).parent
    src = here / "src" / "stepcount" / "_kernels.py"
    stage = here / "build" / "cython"
    stage.mkdir(parents=True, exist_ok=True)
    staged = stage / "_kernels_c.py"
    shutil.copyfile(src, staged)
    return cythonize(
        [Extension("stepcount._kernels_c", [str(staged)])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


setup(ext_modules=extensions())
