"""Circular (ECFP-style) fingerprints and Tanimoto similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch
from .graph import MolGraph

_MASK64 = (1 << 64) - 1


def _mix(*values: int) -> int:
    """Deterministic 64-bit hash combiner (splitmix64-style)."""
    h = 0x9E3779B97F4A7C15
    for v in values:
        h = (h ^ (v & _MASK64)) * 0xBF58476D1CE4E5B9 & _MASK64
        h ^= h >> 27
        h = h * 0x94D049BB133111EB & _MASK64
        h ^= h >> 31
    return h


_SYMBOL_CODE = {s: i for i, s in enumerate(["H", "C", "N", "O", "F", "P", "S", "Cl", "Br", "I", "B"])}


@dataclass
class Fingerprint:
    """Fixed-width bitset with its generating parameters attached."""

    bits: np.ndarray  # bool, shape (nbits,)
    radius: int
    nbits: int

    def count(self) -> int:
        return int(self.bits.sum())


def morgan_fp(mol: MolGraph, radius: int = 2, nbits: int = 2048) -> Fingerprint:
    """Hash every atom neighborhood of radius 0..radius into nbits bits.

    Initial atom invariants cover element, degree, H count, charge and
    aromaticity; each round folds in the sorted (bond order, neighbor hash)
    multiset. Invariant under atom reordering.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if nbits <= 0 or nbits & (nbits - 1):
        raise ValueError("nbits must be a power of two")

    n = len(mol.atoms)
    nbrs = [mol.neighbors(i) for i in range(n)]
    codes = []
    for i, atom in enumerate(mol.atoms):
        codes.append(
            _mix(
                _SYMBOL_CODE.get(atom.symbol, 99),
                len(nbrs[i]),
                atom.h_count,
                atom.charge + 16,
                int(atom.aromatic),
            )
        )

    bits = np.zeros(nbits, dtype=bool)
    fold = nbits - 1
    for h in codes:
        bits[h & fold] = True
    for _ in range(radius):
        new_codes = []
        for i in range(n):
            env = sorted((b.order, codes[j]) for j, b in nbrs[i])
            flat = [codes[i]]
            for order, code in env:
                flat.extend((order, code))
            new_codes.append(_mix(*flat))
        codes = new_codes
        for h in codes:
            bits[h & fold] = True
    return Fingerprint(bits=bits, radius=radius, nbits=nbits)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|a & b| / |a | b|; two empty fingerprints count as identical (1.0)."""
    if a.nbits != b.nbits or a.radius != b.radius:
        raise ShapeMismatch(
            f"fingerprint parameters differ: ({a.nbits},{a.radius}) vs ({b.nbits},{b.radius})"
        )
    union = int(np.logical_or(a.bits, b.bits).sum())
    if union == 0:
        return 1.0
    inter = int(np.logical_and(a.bits, b.bits).sum())
    return inter / union
