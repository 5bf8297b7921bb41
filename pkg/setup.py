from setuptools import setup, find_packages

setup(
    name='twistbraid',
    version='2026.10.0',
    packages=find_packages(exclude=['tests']),
    license='OSI Approved :: MIT License',
    description='Braid group representations in twisted tensor products of group algebras',
    include_package_data=True,
    long_description=open("README.md", encoding='utf-8').read(),
    long_description_content_type="text/markdown",
    python_requires='>=3.10',
    install_requires=[
        'sympy>=1.12',
        'mpmath>=1.3',
        'numpy>=1.24',
        'networkx>=3.0',
        'pydantic>=2.5',
        'pytest',
    ],
    entry_points={
        'console_scripts': ['twistbraid=twistbraid.cli:main'],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License"
    ]
)
