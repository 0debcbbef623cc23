import sys

from asyncsub.main import main

sys.exit(main())
