# -*- coding: utf-8 -*-
#
# ObsLin documentation build configuration file.
import os
import sys
from datetime import datetime

sys.path.insert(0, os.path.abspath('./../..'))  # To find 'obslin' package

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
]

doctest_global_setup = """
import numpy as np
import obslin
from obslin import benchmarks
"""

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'ObsLin'
copyright = u'2026-{}, ObsLin developers'.format(datetime.now().year)

version = '0.1.0'
release = '0.1.0'

exclude_patterns = []
pygments_style = 'sphinx'
autodoc_member_order = 'bysource'

# -- Options for HTML output ----------------------------------------------

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'ObsLindoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'obslin', u'ObsLin Documentation', [u'ObsLin developers'], 1)
]
