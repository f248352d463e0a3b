import sys

from fracfield.cli import main

sys.exit(main())
