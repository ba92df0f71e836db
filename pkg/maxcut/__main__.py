import sys

from maxcut.main import main

sys.exit(main())
