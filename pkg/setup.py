from setuptools import setup, find_packages

setup(
    name='majbound',
    version='0.1.0',
    package_dir={'': 'src'},
    packages=find_packages(where='src'),
    description='Majorization and channel entropic uncertainty bounds for N measurements',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    license='MIT',
    install_requires=['numpy', 'matplotlib'],
    entry_points={'console_scripts': ['majbound = majbound.cli:main']},
    classifiers=[
        'Programming Language :: Python :: 3.10',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.10'
)
