#!/usr/bin/env python
#
# scikit-tda-coint documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

# If extensions (or modules to document with autodoc) are in another
# directory, add these directories to sys.path here.
cwd = os.getcwd()
project_root = os.path.dirname(cwd)
sys.path.insert(0, project_root)

import sktda  # noqa: E402

# -- General configuration ---------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "scikit-tda-coint"
copyright = "2024, the scikit-tda-coint team"

version = sktda.__version__
release = sktda.__version__

exclude_patterns = ["_build"]
pygments_style = "sphinx"

# -- Options for HTML output -------------------------------------------

html_theme = "default"
htmlhelp_basename = "scikit-tda-coint-doc"

man_pages = [("index", "sktda", "scikit-tda-coint Documentation", ["scikit-tda-coint team"], 1)]

on_rtd = os.environ.get("READTHEDOCS", None) == "True"
if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme

    html_theme = "sphinx_rtd_theme"
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
