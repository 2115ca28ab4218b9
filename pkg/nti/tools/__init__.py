"""General helper tools for NTI.py."""
