import sys

from swapmeter.cli import main

sys.exit(main())
