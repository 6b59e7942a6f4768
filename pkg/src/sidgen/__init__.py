"""SiDGen: protein-conditioned masked diffusion over SMILES tokens with
coarse-stride folding features, plus the matching evaluation suite."""

__version__ = "0.1.0"
