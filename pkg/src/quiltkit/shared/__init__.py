"""Shared configuration, errors, schemas and fixture storage for quiltkit."""
