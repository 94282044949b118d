"""Submatrix maximum queries on Monge and partial Monge matrices."""
