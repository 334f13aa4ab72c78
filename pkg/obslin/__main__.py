# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
import sys

from obslin.cli import main

sys.exit(main())
