#!/usr/bin/env python
"""NTI.py: Neural Tree Indexers for text understanding in Python.

NTI.py builds full binary trees over token sequences and composes them
bottom-up with tree-structured LSTM or attentive node functions. It ships
premise/hypothesis matching with global and tree attention, task heads for
inference, answer selection and sentiment, an Adam training loop with
checkpoints and a command-line driver.
"""
import os
import glob

from setuptools import setup

import nti

DOCLINES = __doc__.split("\n")

CLASSIFIERS = """\
Development Status :: 4 - Beta
Intended Audience :: Science/Research
Intended Audience :: Developers
License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)
Programming Language :: Python
Programming Language :: Python :: 3
Topic :: Software Development
Topic :: Scientific/Engineering :: Artificial Intelligence
Operating System :: POSIX
Operating System :: Unix
Operating System :: MacOS
"""

packages_list = ['nti',
                 'nti.ad',
                 'nti.data',
                 'nti.drivers',
                 'nti.model',
                 'nti.optimize',
                 'nti.tools',
                 'nti.tree']

scripts_list = glob.glob(os.path.join('nti', 'drivers', 'nti_*.py'))

setup(
    name='nti',
    version=nti.__version__,
    maintainer="NTI.py Developers",
    description=DOCLINES[0],
    long_description="\n".join(DOCLINES[2:]),
    license='LGPL',
    platforms=["Linux", "Mac OS-X", "Unix"],
    classifiers=[c for c in CLASSIFIERS.split('\n') if c],
    install_requires=['numpy', 'nltk'],
    package_dir={"nti": "nti"},
    packages=packages_list,
    scripts=scripts_list,
    entry_points={'console_scripts': ['nti = nti.drivers.nti_cli:main']},
    tests_require=['pytest', 'hypothesis'],
    setup_requires=['pytest-runner'],
    zip_safe=False
)
