import sys

from kacgen.cli import main

sys.exit(main())
