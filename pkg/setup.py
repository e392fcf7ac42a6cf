"""Build script for the optional Cython enumeration kernel.

    pip install -e . --no-build-isolation

If Cython is missing or compilation fails the package still installs and
falls back to the pure-Python kernel (see ``lonelybus.kernels``).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "lonelybus._ckernel",
                ["src/lonelybus/_ckernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
