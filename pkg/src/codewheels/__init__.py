"""Convexity analysis of combinatorial neural codes: obstructions, wheels, enumeration."""

from .core import Code, NeuronSet, NotAFace, SimplicialComplex, link, neural_complex, neurons, restrict, trunk

__all__ = ["Code", "NeuronSet", "NotAFace", "SimplicialComplex", "link", "neural_complex", "neurons", "restrict", "trunk"]
