#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# Intermittency documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import datetime
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

import intermittency

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.intersphinx',
    'sphinx.ext.napoleon',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'Intermittency'
copyright = '{}, the intermittency developers'.format(datetime.date.today().strftime('%Y'))
author = 'The intermittency developers'

# The full version, including alpha/beta/rc tags.
release = intermittency.__version__
version = '.'.join(release.split('.')[:2]) # The short X.Y version.

language = None

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

default_role = 'py:obj'

add_module_names = False

pygments_style = 'sphinx'

todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

htmlhelp_basename = 'Intermittencydoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'Intermittency.tex', 'Intermittency Documentation', author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'intermittency', 'Intermittency Documentation', [author], 1)
]

# -- Extension configuration ----------------------------------------------

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'multiset': ('http://multiset.readthedocs.io/en/latest/', None),
}

napoleon_use_ivar = False
napoleon_use_rtype = False
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_private_with_doc = True
