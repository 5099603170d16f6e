import sys

from epdiffsw.cli.main import main

sys.exit(main())
