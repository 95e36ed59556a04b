"""The project's __main__ module"""

import sys

from camckit import cli

if __name__ == "__main__":
    sys.exit(cli.main())
