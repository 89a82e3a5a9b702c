#!/usr/bin/env python
"""
pinchperf_shell.py

Runs the pinchperf command-line front end from a source checkout, e.g.

    scripts/pinchperf_shell.py sweep --gamma-t-db 90:115:1 --dx 30
    scripts/pinchperf_shell.py placement --x-m 5 --y-m 2

The file must not be named after the package: Python puts scripts/
first on sys.path, and a scripts/pinchperf.py would be imported in
place of the pinchperf package.
"""
import sys

from pinchperf.cli import main

if __name__ == '__main__':
    sys.exit(main())
