"""Division-algebra quadric manifolds: construction, certification and predicted invariants."""

__version__ = "0.1.0"
