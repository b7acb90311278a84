from setuptools import setup

setup(
    name="xswap",
    version="0.0.1",
    license="MIT license",
    packages=["xswap"],
    install_requires=[
        "numpy",
        "pandas",
        "joblib",
    ],
    entry_points={"console_scripts": ["xswap=xswap.cli:main"]},
    zip_safe=False,
)
