# Indecomposable permutations enumerated by inversions
__version__ = "0.1.0"
