from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("minionlab._kernels", ["src/minionlab/_kernels.pyx"], extra_compile_args=["-O3"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
