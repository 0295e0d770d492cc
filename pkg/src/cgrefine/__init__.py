"""Exact invariants of spatial complete graphs and checks of the refined
Conway-Gordon identities on them."""

__version__ = "0.1.0"
