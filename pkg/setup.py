from setuptools import setup

packages=[
    'pinchperf',
    'pinchperf.tests',
    'pinchperf.helpers',
    'pinchperf.helpers.dispatch',
    'pinchperf.helpers.dispatch.tests',
]

setup(
    name='pinchperf',
    version='1.0.1',
    packages=packages,
    scripts=['scripts/pinchperf_shell.py'],
    license='LICENSE.txt',
    description='Outage, average rate and antenna placement for pinching-antenna systems',
    long_description=open('README.txt').read(),
    python_requires='>=3.8',
    install_requires=['numpy>=1.17', 'scipy>=1.4'],
    extras_require={
        'test': ['pytest', 'hypothesis'],
        'docs': ['sphinx'],
    },
    entry_points={
        'console_scripts': ['pinchperf = pinchperf.cli:main'],
    },
    provides=packages,
)
