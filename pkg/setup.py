"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure Python kernel is selected at
import time), so any failure here is deliberately non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cadorder._kernel", ["src/cadorder/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    import sys

    print(f"cadorder: skipping compiled kernel ({exc!r}); "
          "falling back to the pure Python kernel", file=sys.stderr)

setup(ext_modules=ext_modules)
