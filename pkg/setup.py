import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("WITNESSLAB_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("witnesslab._fastscan", ["src/witnesslab/_fastscan.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # No Cython available: install with the pure-Python scan kernels only.
        ext_modules = []

setup(ext_modules=ext_modules)
