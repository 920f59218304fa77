import os

from setuptools import Extension, setup

# The compiled kernel is optional: without Cython or a C compiler the package
# installs and runs on the pure-Python fallback.
ext_modules = []
if not os.environ.get("GALTOWER_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "galtower.exactfield._fpoly_ext",
                    ["src/galtower/exactfield/_fpoly_ext.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
