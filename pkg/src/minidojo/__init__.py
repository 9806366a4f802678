"""minidojo: a desk-scale machine-learning playground for equational proofs.

The package covers the full loop: parse a small corpus of proof files,
replay and trace the proofs, export machine-readable training data, split it,
train and evaluate a premise retriever, and search for proofs through a
gym-style interaction layer.
"""

__version__ = "0.1.0"
