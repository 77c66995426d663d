"""python -m ftsim 진입점"""

from ftsim.main import main

raise SystemExit(main())
