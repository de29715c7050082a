#!/usr/bin/env python3
"""Download and validate a zero table (thin wrapper over the CLI).

    python scripts/fetch_zeros.py --count 10000 --out data/zeta_zeros.txt

Defaults to Odlyzko's table of the first 100,000 ordinates (9 decimal
places). For machines without network access, scripts/generate_zeros.py
computes the table locally with mpmath instead.
"""

import sys

from zetarace.cli import main

if __name__ == "__main__":
    sys.exit(main(["fetch-zeros", *sys.argv[1:]]))
