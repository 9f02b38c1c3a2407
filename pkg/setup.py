from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "lambdaforge._kernel._native",
                ["src/lambdaforge/_kernel/_native.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    # The package falls back to the pure-Python kernel at import time.
    extensions = []

setup(ext_modules=extensions)
