"""Width calculus for knots presented as Morse words."""
__version__ = "0.1.0"
