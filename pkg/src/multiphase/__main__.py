"""Module entry point: ``python -m multiphase``."""

import sys

from .cli import main

sys.exit(main())
