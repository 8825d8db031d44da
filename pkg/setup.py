import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MODALK_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; installing the pure-Python kernels only")
    else:
        ext_modules = cythonize(
            [Extension("modalk._ckernels", ["src/modalk/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
