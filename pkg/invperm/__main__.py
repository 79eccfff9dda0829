import sys

from invperm.main import main

sys.exit(main())
