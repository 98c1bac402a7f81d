"""
Command-line round trip
=======================

Generate an instance file, analyze it and certify its bialgebra, all through
the ``riemann-lie`` entry point.
"""

import tempfile
from pathlib import Path

from riemann_lie import cli

workdir = Path(tempfile.mkdtemp())
path = workdir / "flat.json"

###############################################################################
# ``generate`` writes a reproducible instance.  The same seed always gives
# the same bytes.

cli.main(["generate", "flat", "--p", "2", "--q", "4", "--seed", "3", "--out", str(path)])
print(path.read_text()[:200], "...")

###############################################################################
# Human-readable analysis.

cli.main(["analyze", str(path)])

###############################################################################
# The bialgebra certificate.  Add ``--json`` for the machine-readable report.

code = cli.main(["bialgebra", str(path)])
print("exit code", code)
