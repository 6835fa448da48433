"""Build shim: compiles the optional native kernel extension.

The package works without the extension (pure-Python fallback); the build
therefore tolerates a missing Cython or a failing C toolchain.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hco._kernels._native",
                ["src/hco/_kernels/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
