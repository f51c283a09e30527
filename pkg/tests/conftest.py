"""Shared test configuration.

Makes the package importable from a plain checkout (no install needed)
by putting src/ on sys.path ahead of site-packages.
"""

import sys
from pathlib import Path

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))
