# Sphinx configuration for the orthoplex documentation
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join("..", "..")))

import orthoplex  # noqa: E402

project = "orthoplex"
copyright = "2022, Paul Slavin"
author = "Paul Slavin"
release = orthoplex.__version__
version = orthoplex.__version__

extensions = [
    "sphinx_rtd_theme",
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax"
]

autodoc_member_order = "bysource"
napoleon_custom_sections = [("Returns", "params_style")]

templates_path = []
exclude_patterns = []

html_theme = "sphinx_rtd_theme"
