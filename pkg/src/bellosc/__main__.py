"""Allow ``python -m bellosc`` as an alias for the ``bellosc`` entry point."""

import sys

from .cli import main

sys.exit(main())
