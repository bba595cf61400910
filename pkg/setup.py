"""Build the optional Cython kernel; installs pure Python if that fails."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ffcn._kernels",
                ["src/ffcn/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # fallback kernels are selected at import time
    print(f"ffcn: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
