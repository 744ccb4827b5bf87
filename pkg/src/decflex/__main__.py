import sys

from decflex.cli import main

sys.exit(main())
