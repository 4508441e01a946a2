import sys

from prabhakar.cli import main

sys.exit(main())
