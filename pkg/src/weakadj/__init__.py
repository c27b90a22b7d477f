"""Finite-scale kernel for homotopically enriched category theory."""
