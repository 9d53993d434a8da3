import sys

from .fluctuation_lab import main

sys.exit(main())
