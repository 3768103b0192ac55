import sys

from pigraph.cli import main

sys.exit(main())
