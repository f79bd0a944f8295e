from setuptools import find_packages, setup


def read_requirements(filename: str):
    return [line for line in open(filename).readlines() if not line.startswith("--")]


setup(
    name="nashfan",
    python_requires=">=3.10",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    include_package_data=True,
    package_data={"nashfan": ["config.yml"]},
    version="1.0.0",
    description="Exact Gröbner bases and Gröbner fans over toric surface algebras, higher Nash blowups",
    install_requires=read_requirements("requirements.txt"),
    extras_require={"test": read_requirements("requirements-dev.txt")},
    entry_points={"console_scripts": ["nashfan=nashfan.cli:entry_point"]},
)
