import sys

from flagforge.cli import main

sys.exit(main())
