"""todalab: a desk-scale lab for integrable 1+1D field theories with boundaries and defects."""

__version__ = "0.1.0"
