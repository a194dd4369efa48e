from setuptools import setup, find_packages

setup(
    name='dpenet',  # Nombre de la librería
    version='0.1.0',
    packages=find_packages(exclude=('test', 'test.*')),
    install_requires=[
        'numpy',
        'pandas',
    ],
    entry_points={
        'console_scripts': ['dpenet = dpenet.cli.main:main'],
    },
    test_suite='test',  # Especificar dónde están los tests
    author='Pablo Cabeza',
)
