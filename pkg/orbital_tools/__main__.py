import sys

from orbital_tools.cli import main

sys.exit(main())
