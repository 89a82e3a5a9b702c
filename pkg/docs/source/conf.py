# -*- coding: utf-8 -*-
#
# pinchperf documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.append(os.path.abspath('../..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.coverage', 'sphinx.ext.mathjax']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'pinchperf'
copyright = u'2024, pinchperf developers'

# The short X.Y version.
version = '1.0'
# The full version, including alpha/beta/rc tags.
release = '1.0.1'

exclude_trees = []

pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'

html_static_path = ['_static']

htmlhelp_basename = 'pinchperfdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'pinchperf.tex', u'pinchperf Documentation',
   u'pinchperf developers', 'manual'),
]
