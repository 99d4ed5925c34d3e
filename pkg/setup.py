import os

from setuptools import setup

ext_modules = []
if os.environ.get("LGCY_NO_EXTENSION", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(["src/lgcy/_ckernels.pyx"], language_level=3)

setup(ext_modules=ext_modules)
