"""CLI package for quiltkit."""
