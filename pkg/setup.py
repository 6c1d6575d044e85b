# Builds the optional compiled simulator kernel. Without Cython or a C
# compiler the package still installs and runs on the numpy kernel.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "edgedeploy.simulator._ckernel",
                ["src/edgedeploy/simulator/_ckernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
