from setuptools import find_packages, setup

setup(
    name="physarum-oracles",
    version="0.1.0",
    description="Physarum-style growth simulator checked against classical geometry oracles",
    package_dir={"": "src"},
    packages=find_packages(where="src", include=["physarum", "physarum.*", "shared", "shared.*"]),
    package_data={
        "shared.schemas": ["*.json"],
        "physarum.harness": ["data/*.json", "data/*.pgm"],
    },
    python_requires=">=3.10",
    install_requires=[
        "click",
        "jsonschema",
        "matplotlib",
        "networkx",
        "numpy",
        "python-dotenv",
        "scipy",
    ],
    entry_points={"console_scripts": ["physarum=physarum.harness.cli:main"]},
)
