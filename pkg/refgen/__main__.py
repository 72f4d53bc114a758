import sys

from refgen.cli import main

if __name__ == "__main__":
    sys.exit(main())
