from setuptools import setup, find_packages

# Métadonnées et dépendances : voir pyproject.toml
setup(
    packages=find_packages(exclude=["tests", "tests.*"]),
)
