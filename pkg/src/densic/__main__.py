import sys

from densic.cli import main

sys.exit(main())
