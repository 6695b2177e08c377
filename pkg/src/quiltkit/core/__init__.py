"""Symplectic linear algebra, quilts and graded invariants."""
