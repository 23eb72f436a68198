# -*- coding: utf-8 -*-
#
# Sphinx configuration of the mfaregex documentation.

import os
import sys

project_root = os.path.dirname(os.getcwd())
sys.path.insert(0, project_root)

meta = {}
exec(open(os.path.join(project_root, 'mfaregex', 'version.py')).read(), {}, meta)

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx', 'sphinx.ext.viewcode']
intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
autodoc_member_order = 'bysource'

source_suffix = ['.rst']
master_doc = 'index'
exclude_patterns = ['_build']

project = 'mfaregex'
copyright = '2026, the mfaregex developers'
version = release = meta['__version__']

pygments_style = 'sphinx'
html_theme = 'alabaster'
htmlhelp_basename = 'mfaregexdoc'

man_pages = [
    ('usage', 'mfaregex', 'Match and analyse regular expressions with backreferences', ['mfaregex developers'], 1)
]
