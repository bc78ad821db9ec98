from quasihopf.cli import main
import sys

sys.exit(main())
