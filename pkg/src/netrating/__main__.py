import sys

from netrating.cli import main

sys.exit(main())
