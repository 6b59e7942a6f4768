"""Canonical SMILES generation.

Atom ranks come from iterative invariant refinement (degree, element,
charge, H count, aromaticity, ring membership, then neighborhood ranks).
Remaining ties are broken by promoting each tied atom in turn and keeping
the lexicographically smallest emitted string, so the output is independent
of input atom order. The canonical form is self-consistent but not meant to
be byte-identical to any other toolkit's.
"""

from __future__ import annotations

from .graph import (
    AROMATIC,
    DOUBLE,
    SINGLE,
    TRIPLE,
    MolGraph,
    allowed_valences,
    effective_bond_sums,
    perceive_aromaticity,
    permute_atoms,
)

# Cap on tie-break branches explored; beyond it only the first candidate in
# each tied class is expanded (sufficient for ordinary chemistry, where ties
# surviving refinement are automorphic and any choice yields the same string).
_BRANCH_BUDGET = 256

_ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}


def _dense(keys):
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _initial_ranks(mol: MolGraph) -> list[int]:
    in_ring = set()
    for ring in mol.rings():
        in_ring.update(ring)
    keys = []
    for i, atom in enumerate(mol.atoms):
        keys.append(
            (
                len(mol.neighbors(i)),
                atom.symbol,
                atom.charge,
                atom.h_count,
                atom.aromatic,
                i in in_ring,
            )
        )
    return _dense(keys)


def _refine(mol: MolGraph, ranks: list[int]) -> list[int]:
    adj = [mol.neighbors(i) for i in range(len(mol.atoms))]
    while True:
        keys = [
            (ranks[i], tuple(sorted((b.order, ranks[j]) for j, b in adj[i])))
            for i in range(len(ranks))
        ]
        new = _dense(keys)
        if new == ranks:
            return ranks
        ranks = new


def _atom_token(mol: MolGraph, idx: int, bsums: list[int]) -> str:
    atom = mol.atoms[idx]
    symbol = atom.symbol.lower() if atom.aromatic else atom.symbol
    if atom.charge == 0 and atom.symbol in _ORGANIC_SUBSET:
        # Bare atoms rely on default valence filling at re-parse time.
        fill = None
        for v in allowed_valences(atom.symbol, 0):
            if v >= bsums[idx]:
                fill = v - bsums[idx]
                break
        if fill == atom.h_count:
            return symbol
    if atom.h_count == 0:
        h = ""
    elif atom.h_count == 1:
        h = "H"
    else:
        h = f"H{atom.h_count}"
    if atom.charge == 0:
        q = ""
    elif atom.charge == 1:
        q = "+"
    elif atom.charge == -1:
        q = "-"
    else:
        q = f"{atom.charge:+d}"
    return f"[{symbol}{h}{q}]"


def _bond_symbol(mol: MolGraph, bond) -> str:
    if bond.order == DOUBLE:
        return "="
    if bond.order == TRIPLE:
        return "#"
    if bond.order == AROMATIC:
        return ""
    # Explicit single bond between two aromatic atoms (e.g. biphenyl), so a
    # re-parse does not default it to aromatic.
    if mol.atoms[bond.a].aromatic and mol.atoms[bond.b].aromatic:
        return "-"
    return ""


def _emit(mol: MolGraph, ranks: list[int]) -> str:
    bsums = effective_bond_sums(mol)
    n = len(mol.atoms)
    nbrs = [sorted(mol.neighbors(i), key=lambda t: ranks[t[0]]) for i in range(n)]
    start = ranks.index(min(ranks))

    visited = [False] * n
    tree: list[list[tuple[int, object]]] = [[] for _ in range(n)]
    ring_at: list[list[tuple[int, object]]] = [[] for _ in range(n)]
    used = set()

    def explore(a: int) -> None:
        visited[a] = True
        for b, bond in nbrs[a]:
            key = (min(a, b), max(a, b))
            if key in used:
                continue
            if visited[b]:
                used.add(key)
                ring_at[a].append((b, bond))
                ring_at[b].append((a, bond))
            else:
                used.add(key)
                tree[a].append((b, bond))
                explore(b)

    explore(a=start)

    digits: dict[tuple[int, int], int] = {}
    open_digits: set[int] = set()
    emitted = [False] * n

    def ring_token(a: int, b: int, bond) -> str:
        key = (min(a, b), max(a, b))
        if key in digits:
            d = digits.pop(key)
            open_digits.discard(d)
            return str(d) if d < 10 else f"%{d:02d}"
        d = 1
        while d in open_digits:
            d += 1
        open_digits.add(d)
        digits[key] = d
        num = str(d) if d < 10 else f"%{d:02d}"
        return _bond_symbol(mol, bond) + num

    def write(a: int) -> str:
        emitted[a] = True
        parts = [_atom_token(mol, a, bsums)]
        for b, bond in ring_at[a]:
            parts.append(ring_token(a, b, bond))
        children = tree[a]
        for i, (c, bond) in enumerate(children):
            sym = _bond_symbol(mol, bond)
            sub = sym + write(c)
            if i < len(children) - 1:
                parts.append("(" + sub + ")")
            else:
                parts.append(sub)
        return "".join(parts)

    return write(start)


def _canonical_component(mol: MolGraph) -> str:
    budget = [_BRANCH_BUDGET]
    best: list[str | None] = [None]

    def search(ranks: list[int]) -> None:
        ranks = _refine(mol, ranks)
        by_rank: dict[int, list[int]] = {}
        for i, r in enumerate(ranks):
            by_rank.setdefault(r, []).append(i)
        tied = None
        for r in sorted(by_rank):
            if len(by_rank[r]) > 1:
                tied = by_rank[r]
                break
        if tied is None:
            s = _emit(mol, ranks)
            if best[0] is None or s < best[0]:
                best[0] = s
            return
        for a in tied:
            if budget[0] <= 0 and best[0] is not None:
                return
            budget[0] -= 1
            promoted = [r * 2 for r in ranks]
            promoted[a] -= 1
            search(_dense(promoted))

    search(_initial_ranks(mol))
    assert best[0] is not None
    return best[0]


def _components(mol: MolGraph) -> list[MolGraph]:
    n = len(mol.atoms)
    adj = mol.adjacency()
    comp = [-1] * n
    c = 0
    for i in range(n):
        if comp[i] >= 0:
            continue
        stack = [i]
        comp[i] = c
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if comp[b] < 0:
                    comp[b] = c
                    stack.append(b)
        c += 1
    if c == 1:
        return [mol]
    out = []
    for k in range(c):
        idx = [i for i in range(n) if comp[i] == k]
        remap = {old: new for new, old in enumerate(idx)}
        sub = MolGraph(
            atoms=[mol.atoms[i] for i in idx],
            bonds=[
                type(b)(remap[b.a], remap[b.b], b.order)
                for b in mol.bonds
                if b.a in remap and b.b in remap
            ],
        )
        out.append(sub)
    return out


def canonicalize(mol: MolGraph) -> str:
    """Deterministic canonical SMILES for a valid molecular graph.

    Aromaticity is perceived first, so Kekule and aromatic input forms of
    the same molecule produce identical strings. Idempotent under
    parse/canonicalize round trips.
    """
    work = permute_atoms(mol, list(range(len(mol.atoms))))
    perceive_aromaticity(work)
    parts = sorted(_canonical_component(c) for c in _components(work))
    return ".".join(parts)


def canonical_smiles(smiles: str) -> str:
    """Parse then canonicalize; raises on invalid input."""
    from .parser import parse

    return canonicalize(parse(smiles))
