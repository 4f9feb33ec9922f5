"""Module entry point: ``python -m gridhack``."""

import sys

from .cli import main

sys.exit(main())
