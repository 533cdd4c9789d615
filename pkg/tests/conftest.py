# Makes sibling helper modules (reference.py) importable from any test file.
