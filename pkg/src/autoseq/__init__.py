"""Automatic sequences: words and morphisms, k-automata, a sequence zoo,
repetitions and complexity, spectral estimates, folding and dragon curves,
automaton opacity, the induced field of the random-field Ising chain, and
two-dimensional substitutions."""

__version__ = "0.1.0"

from .words import DomainError  # noqa: F401
