"""quiltkit - formal relative invariants of quilted surfaces."""

__version__ = "0.1.0"
__author__ = "quiltkit developers"
