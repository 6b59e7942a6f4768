"""Exceptions raised by the chemistry toolkit."""


class ChemkitError(Exception):
    """Base class for all chemistry-level failures."""


class UnknownToken(ChemkitError):
    """No token matches the input at ``position``."""

    def __init__(self, smiles: str, position: int):
        self.position = position
        super().__init__(f"no token matches {smiles!r} at position {position}")


class ParseError(ChemkitError):
    """The string is not grammatically valid SMILES."""


class ValenceError(ChemkitError):
    """An atom exceeds its allowed valence (or an aromatic system cannot
    be kekulized)."""


class UnknownElement(ChemkitError):
    """Element symbol outside the supported organic subset."""


class ShapeMismatch(ChemkitError):
    """Fingerprints with different width or radius were compared."""
