import os

from setuptools import setup

ext_modules = []
if os.environ.get("GOWERS_LAB_PURE", "") != "1":
    try:
        from Cython.Build import cythonize
        import numpy as np
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            "src/gowers_lab/_ckernels.pyx",
            compiler_directives={"language_level": "3"},
        )
        for ext in ext_modules:
            ext.include_dirs.append(np.get_include())

setup(ext_modules=ext_modules)
