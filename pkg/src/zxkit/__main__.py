import sys

from zxkit.cli import main

sys.exit(main())
