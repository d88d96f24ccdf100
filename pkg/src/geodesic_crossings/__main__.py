"""Entry point for ``python -m geodesic_crossings``."""

import sys

from .cli import main

sys.exit(main())
