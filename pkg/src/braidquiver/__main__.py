import sys

from braidquiver.cli import main

sys.exit(main())
