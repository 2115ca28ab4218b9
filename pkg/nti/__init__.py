"""NTI.py: Neural Tree Indexers in Python."""

__version__ = "0.1.0"
