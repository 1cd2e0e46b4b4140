import sys

from commonperm.cli import main

sys.exit(main())
