"""SMILES lexing, vocabulary handling and greedy tokenization.

Two layers:

* ``lex_smiles`` — grammar-driven splitter used to build vocabularies and
  by the parser. Bracket atoms ``[...]``, two-character halogens and
  ``%NN`` ring closures each become one token.
* ``tokenize`` — greedy longest-match against a fixed :class:`TokenVocab`,
  the form the diffusion model consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownToken

PAD = "<pad>"
MASK = "<mask>"
BOS = "<bos>"
EOS = "<eos>"
SPECIALS = (PAD, MASK, BOS, EOS)

_ORGANIC = set("BCNOPSFI")
_AROMATIC = set("bcnops")
_BONDS = set("-=#:/\\")
_PUNCT = set("().")
_DIGITS = set("0123456789")


def lex_smiles(smiles: str) -> list[str]:
    """Split a SMILES string into grammar tokens.

    Raises UnknownToken at the first character that cannot start a token.
    """
    tokens = []
    i = 0
    n = len(smiles)
    while i < n:
        ch = smiles[i]
        if ch == "[":
            j = smiles.find("]", i + 1)
            if j < 0:
                raise UnknownToken(smiles, i)
            tokens.append(smiles[i : j + 1])
            i = j + 1
        elif ch == "%":
            if i + 2 < n and smiles[i + 1].isdigit() and smiles[i + 2].isdigit():
                tokens.append(smiles[i : i + 3])
                i += 3
            else:
                raise UnknownToken(smiles, i)
        elif smiles[i : i + 2] in ("Cl", "Br"):
            tokens.append(smiles[i : i + 2])
            i += 2
        elif ch in _ORGANIC or ch in _AROMATIC or ch in _BONDS or ch in _PUNCT or ch in _DIGITS:
            tokens.append(ch)
            i += 1
        else:
            raise UnknownToken(smiles, i)
    return tokens


@dataclass
class TokenSeq:
    """Integer token sequence; pad_mask marks real (non-pad) positions."""

    ids: np.ndarray
    pad_mask: np.ndarray

    def __len__(self) -> int:
        return len(self.ids)


@dataclass
class TokenVocab:
    """Ordered token list with dense ids; specials occupy the first slots."""

    tokens: list[str]
    id_of: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.id_of = {tok: i for i, tok in enumerate(self.tokens)}
        if len(self.id_of) != len(self.tokens):
            raise ValueError("duplicate tokens in vocabulary")
        for special in SPECIALS:
            if special not in self.id_of:
                raise ValueError(f"vocabulary missing special token {special}")
        self._by_length = sorted({len(t) for t in self.tokens if t not in SPECIALS}, reverse=True)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def pad_id(self) -> int:
        return self.id_of[PAD]

    @property
    def mask_id(self) -> int:
        return self.id_of[MASK]

    @property
    def bos_id(self) -> int:
        return self.id_of[BOS]

    @property
    def eos_id(self) -> int:
        return self.id_of[EOS]

    @property
    def special_ids(self) -> tuple[int, ...]:
        return tuple(self.id_of[s] for s in SPECIALS)


def build_vocab(corpus: list[str]) -> TokenVocab:
    """Scan SMILES strings with the grammar lexer and collect every token."""
    seen: set[str] = set()
    for smiles in corpus:
        seen.update(lex_smiles(smiles))
    return TokenVocab(list(SPECIALS) + sorted(seen))


def tokenize(smiles: str, vocab: TokenVocab) -> TokenSeq:
    """Greedy longest-match tokenization against the vocabulary."""
    if not smiles:
        raise UnknownToken(smiles, 0)
    ids = []
    i = 0
    n = len(smiles)
    while i < n:
        matched = False
        for length in vocab._by_length:
            cand = smiles[i : i + length]
            if len(cand) == length and cand in vocab.id_of and cand not in SPECIALS:
                ids.append(vocab.id_of[cand])
                i += length
                matched = True
                break
        if not matched:
            raise UnknownToken(smiles, i)
    arr = np.asarray(ids, dtype=np.int64)
    return TokenSeq(ids=arr, pad_mask=np.ones(len(arr), dtype=bool))


def detokenize(seq: TokenSeq | np.ndarray | list[int], vocab: TokenVocab) -> str:
    """Join tokens back into a string.

    Stops at the first EOS; PAD/BOS/MASK tokens are dropped.
    """
    ids = seq.ids if isinstance(seq, TokenSeq) else np.asarray(seq)
    skip = {vocab.pad_id, vocab.bos_id, vocab.mask_id}
    out = []
    for tid in ids.tolist():
        if tid == vocab.eos_id:
            break
        if tid in skip:
            continue
        out.append(vocab.tokens[tid])
    return "".join(out)


def save_vocab(path, vocab: TokenVocab) -> None:
    """One token per line, specials first, UTF-8."""
    with open(path, "w", encoding="utf-8") as fh:
        for tok in vocab.tokens:
            fh.write(tok + "\n")


def load_vocab(path) -> TokenVocab:
    with open(path, encoding="utf-8") as fh:
        tokens = [line.rstrip("\n") for line in fh if line.rstrip("\n")]
    return TokenVocab(tokens)
