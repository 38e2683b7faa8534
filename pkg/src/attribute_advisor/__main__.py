import sys

from attribute_advisor.cli import main

if __name__ == "__main__":
    sys.exit(main())
