"""Run the CLI via ``python -m plan_strings``."""

import sys

from .cli import main

sys.exit(main())
