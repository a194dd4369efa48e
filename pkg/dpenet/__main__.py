import sys

from dpenet.cli.main import main

sys.exit(main())
