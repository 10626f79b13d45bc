"""Build script: compiles the optional fast exploration kernel.

The package works without the extension (a pure-Python engine with
identical semantics is selected at import time), so a failed Cython
build degrades gracefully instead of breaking the install.
"""

from setuptools import Extension, setup

extensions = []
try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "hfreetest._fastengine",
                ["src/hfreetest/_fastengine.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"warning: skipping fast engine build ({exc}); pure-Python engine will be used")
    extensions = []

setup(ext_modules=extensions)
