"""Build hook for the optional compiled F_p kernels.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and falls back to the pure-Python kernels.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build environment without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "barcodebases._kernels._fastfp",
                ["src/barcodebases/_kernels/_fastfp.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
