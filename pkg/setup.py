import pathlib
from setuptools import setup

# The directory containing this file
root_path = pathlib.Path(__file__).parent
long_description = (root_path / "README.rst").read_text(encoding="utf-8")

setup(
    name='orbital-measure-tools',
    version='0.1.0',
    packages=['orbital_tools', 'orbital_tools.examples'],
    license='MIT',
    author='orbital-measure-tools developers',
    author_email='',
    description='Absolute continuity of convolutions of orbital measures on SO_0(p,p), SU(p,p) and Sp(p,p)',
    long_description=long_description,
    long_description_content_type='text/x-rst',
    python_requires='>=3.8',
    install_requires=[
        "numpy",
        "scipy",
        "sympy",
        "python-pptx",
    ],
    entry_points={
        'console_scripts': ['orbital-tools=orbital_tools.cli:main'],
    },
)
