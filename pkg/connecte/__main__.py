import sys

from connecte.cli import main

sys.exit(main())
