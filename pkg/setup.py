import os
from setuptools import setup, find_packages

# Get the long description from the README file
here = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(here, 'docs', 'index.rst')) as f:
    long_description = f.read()

setup(
    name='graphcurves',
    version='0.1.0',
    description='Tropical schön embeddings of planar cubic graphs, with faithfulness certificates and ΔY reductions',
    long_description=long_description,
    long_description_content_type='text/x-rst',
    packages=find_packages(exclude=['tests', 'tests.*']),
    package_data={
        'graphcurves.data': ['*.graph', '*.txt'],
    },
    python_requires='>=3.8',
    install_requires=[
        'networkx',
        'sympy',
        'matplotlib', # For rendering embeddings and tropical complexes to SVG
    ],
    extras_require={
        'tests': ['pytest'],
        'docs': ['sphinx', 'sphinx-copybutton'],
    },
    entry_points={
        'console_scripts': [
            'graphcurves=graphcurves.cli:main',
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ]
)
