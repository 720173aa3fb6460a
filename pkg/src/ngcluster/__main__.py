import sys

from ngcluster.cli import main

sys.exit(main())
