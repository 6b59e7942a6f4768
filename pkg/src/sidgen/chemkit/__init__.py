"""In-loop chemistry: SMILES tokenization, parsing, validity, canonical
forms, fingerprints and basic descriptors."""

from .errors import (
    ChemkitError,
    ParseError,
    ShapeMismatch,
    UnknownElement,
    UnknownToken,
    ValenceError,
)
from .canonical import canonical_smiles, canonicalize
from .fingerprint import Fingerprint, morgan_fp, tanimoto
from .graph import (
    AROMATIC,
    DOUBLE,
    SINGLE,
    TRIPLE,
    Atom,
    Bond,
    MolGraph,
    mol_weight,
    perceive_aromaticity,
    permute_atoms,
)
from .parser import is_valid, parse
from .tokenizer import (
    BOS,
    EOS,
    MASK,
    PAD,
    SPECIALS,
    TokenSeq,
    TokenVocab,
    build_vocab,
    detokenize,
    lex_smiles,
    load_vocab,
    save_vocab,
    tokenize,
)


def mol_from_smiles(smiles: str, aromatic_perception: bool = True) -> MolGraph:
    """Parse and (by default) perceive aromaticity, so Kekule and aromatic
    spellings of the same molecule yield one graph."""
    mol = parse(smiles)
    if aromatic_perception:
        perceive_aromaticity(mol)
    return mol


__all__ = [
    "AROMATIC",
    "Atom",
    "BOS",
    "Bond",
    "ChemkitError",
    "DOUBLE",
    "EOS",
    "Fingerprint",
    "MASK",
    "MolGraph",
    "PAD",
    "ParseError",
    "SINGLE",
    "SPECIALS",
    "ShapeMismatch",
    "TRIPLE",
    "TokenSeq",
    "TokenVocab",
    "UnknownElement",
    "UnknownToken",
    "ValenceError",
    "build_vocab",
    "canonical_smiles",
    "canonicalize",
    "detokenize",
    "is_valid",
    "lex_smiles",
    "load_vocab",
    "mol_from_smiles",
    "mol_weight",
    "morgan_fp",
    "parse",
    "perceive_aromaticity",
    "permute_atoms",
    "save_vocab",
    "tanimoto",
    "tokenize",
]
