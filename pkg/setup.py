from setuptools import setup, find_packages

exec(open("flagged_slides/_version.py").read())

setup(
    name="flagged_slides",
    version=__version__,  # noqa: F821
    packages=find_packages(exclude=["tests"]),
    entry_points={
        "console_scripts": [
            "flagged_slides=flagged_slides.cli:main",
        ]
    },
    install_requires=[
        "more-itertools>=10.1.0",
        "networkx>=3.2",
        "pandas>=1.5.2",
        "setuptools>=65.5.1",
    ],
    extras_require={"test": ["pytest>=7.4.0"]},
)
