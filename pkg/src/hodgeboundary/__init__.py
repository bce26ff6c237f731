"""Computations with polarized weight -1 Hodge structures and their degenerations."""
