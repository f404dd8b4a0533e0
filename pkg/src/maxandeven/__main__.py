import sys

from maxandeven.cli import main

sys.exit(main())
