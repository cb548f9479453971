#!/usr/bin/env python3
"""Run every verification suite and exit nonzero on any failed check.

Equivalent to ``qnogo all``; extra arguments are forwarded (for example
``--format json`` or ``--tolerance 1e-12``).
"""

import sys

from qnogo.cli import main

if __name__ == "__main__":
    sys.exit(main(["all", *sys.argv[1:]]))
