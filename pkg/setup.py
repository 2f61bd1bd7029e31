import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HS_INSCRIBE_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("hs_inscribe._kernels", ["src/hs_inscribe/_kernels.pyx"],
                   include_dirs=[np.get_include()])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
