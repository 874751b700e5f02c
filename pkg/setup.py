"""Setup script for arrduality."""

from setuptools import setup, find_packages

# This file is kept for compatibility with older pip versions
# The actual configuration is in pyproject.toml

setup(
    name="arrduality",
    use_scm_version=False,
    packages=find_packages(include=["arrduality*"]),
    python_requires=">=3.9",
)
