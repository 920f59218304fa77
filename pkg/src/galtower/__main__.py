from galtower.cli import main
import sys
sys.exit(main())
