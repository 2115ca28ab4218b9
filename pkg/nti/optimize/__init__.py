"""Optimization, regularization and evaluation metrics."""
