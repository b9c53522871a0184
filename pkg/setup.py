"""
Setup script for termlint
"""

from setuptools import setup, find_packages

setup(
    name="termlint",
    version="0.1.0",
    description="Static termination analysis for logic programs with function symbols",
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={"corpus": ["*.lp"], "cli": ["*.json"]},
    install_requires=["lark>=1.1", "networkx>=2.6", "jsonschema>=4.0"],
    entry_points={"console_scripts": ["termlint=cli.main:main"]},
)
