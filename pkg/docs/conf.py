import os
import sys
sys.path.insert(0, os.path.abspath('..'))

project = 'dpenet'
extensions = ['sphinx.ext.autodoc']
language = 'es'
