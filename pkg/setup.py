"""Build script. The compiled kernel extension is optional: if Cython or a C
compiler is unavailable the package installs with the pure-Python kernels only.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SCENEWEAVER_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "sceneweaver.kernels._native",
                    ["src/sceneweaver/kernels/_native.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
