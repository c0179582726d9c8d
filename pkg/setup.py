from setuptools import setup

# The saturation kernel compiles to a C extension when Cython is around.
# Everything works without it; magmakit.congruence falls back to the pure
# Python twin at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/magmakit/_satcore.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
