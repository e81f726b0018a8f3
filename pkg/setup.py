from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        Extension("qgame._kernels", ["src/qgame/_kernels.pyx"]),
        language_level="3",
    )
else:
    # Pure-Python fallback kernel is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
