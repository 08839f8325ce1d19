import sys

from conedetect.cli import main

sys.exit(main())
