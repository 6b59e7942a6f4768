"""Molecular graph: atoms, bonds, rings, valence and aromaticity handling.

The graph is deliberately small: enough chemistry to answer "is this SMILES
a sensible molecule", to canonicalize, and to hash atom environments for
fingerprints. Stereochemistry and isotopes are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownElement, ValenceError

# Bond order codes. AROMATIC marks delocalized ring bonds; their integer
# contribution to valence is resolved by kekulization.
SINGLE = 1
DOUBLE = 2
TRIPLE = 3
AROMATIC = 4

# Allowed valences per neutral element (smallest listed first).
VALENCES = {
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "S": (2, 4, 6),
    "P": (3, 5),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
    "H": (1,),
}

# Valences for the charged states we accept; anything else is rejected.
CHARGED_VALENCES = {
    ("C", 1): (3,),
    ("C", -1): (3,),
    ("N", 1): (4,),
    ("N", -1): (2,),
    ("O", 1): (3,),
    ("O", -1): (1,),
    ("S", 1): (3,),
    ("S", -1): (1,),
    ("P", 1): (4,),
}

# Standard atomic weights (CIAAW 2021 abridged).
ATOMIC_MASS = {
    "H": 1.008,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998,
    "P": 30.974,
    "S": 32.06,
    "Cl": 35.45,
    "Br": 79.904,
    "I": 126.904,
}

# Elements that may appear lowercase (aromatic) in SMILES.
AROMATIC_ELEMENTS = {"C", "N", "O", "S", "P"}

MAX_RING_SIZE = 8


@dataclass
class Atom:
    symbol: str
    charge: int = 0
    h_count: int = 0
    aromatic: bool = False
    bracket: bool = False  # hydrogen count fixed by the input, not derived


@dataclass
class Bond:
    a: int
    b: int
    order: int = SINGLE

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass
class MolGraph:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)

    def neighbors(self, idx: int) -> list[tuple[int, Bond]]:
        out = []
        for bond in self.bonds:
            if bond.a == idx:
                out.append((bond.b, bond))
            elif bond.b == idx:
                out.append((bond.a, bond))
        return out

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adj[bond.a].append(bond.b)
            adj[bond.b].append(bond.a)
        return adj

    def bond_between(self, a: int, b: int) -> Bond | None:
        for bond in self.bonds:
            if {bond.a, bond.b} == {a, b}:
                return bond
        return None

    def rings(self, max_size: int = MAX_RING_SIZE) -> list[tuple[int, ...]]:
        """All simple cycles up to ``max_size`` atoms, each reported once."""
        return simple_rings(self.adjacency(), max_size)

    def ring_membership(self) -> list[set[int]]:
        return [set(r) for r in self.rings()]


def simple_rings(adj: list[list[int]], max_size: int = MAX_RING_SIZE) -> list[tuple[int, ...]]:
    """Enumerate simple cycles of length 3..max_size via bounded DFS.

    Each cycle is emitted once, rooted at its smallest atom index with a
    fixed traversal direction.
    """
    rings: list[tuple[int, ...]] = []
    seen: set[frozenset[int]] = set()
    n = len(adj)
    for start in range(n):
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for nbr in adj[node]:
                if nbr == start and len(path) >= 3:
                    # Canonical orientation: second atom smaller than last.
                    if path[1] < path[-1]:
                        key = frozenset(path)
                        if len(key) == len(path) and key not in seen:
                            seen.add(key)
                            rings.append(tuple(path))
                elif nbr > start and nbr not in path and len(path) < max_size:
                    stack.append((nbr, path + [nbr]))
    return rings


def allowed_valences(symbol: str, charge: int) -> tuple[int, ...]:
    if charge == 0:
        vals = VALENCES.get(symbol)
    else:
        vals = CHARGED_VALENCES.get((symbol, charge))
    if vals is None:
        raise ValenceError(f"unsupported element/charge state {symbol}{charge:+d}" if charge else f"no valence data for {symbol}")
    return vals


def _pi_needs(mol: MolGraph, idx: int, arom_degree: int, non_arom_sum: int) -> bool:
    """Whether an aromatic atom must receive one double bond on kekulization.

    Carbons always take one; pyrrole-type N/P (explicit H, negative charge,
    or three connections) and O/S contribute a lone pair instead.
    """
    atom = mol.atoms[idx]
    if atom.symbol == "C":
        return True
    if atom.symbol in ("O", "S"):
        return False
    if atom.symbol in ("N", "P"):
        if atom.bracket and atom.h_count > 0:
            return False
        if atom.charge < 0:
            return False
        # Three connections (two ring bonds + substituent) = pyrrole-type.
        return arom_degree + non_arom_sum < 3
    return False


def kekulize(mol: MolGraph) -> set[frozenset[int]]:
    """Find a double-bond assignment for the aromatic bond subgraph.

    Returns the matched bonds as atom-index pairs. Raises ValenceError when
    no perfect matching over the atoms that require a double bond exists.
    """
    arom_atoms = [i for i, a in enumerate(mol.atoms) if a.aromatic]
    if not arom_atoms:
        return set()

    arom_adj: dict[int, list[int]] = {i: [] for i in arom_atoms}
    for bond in mol.bonds:
        if bond.order == AROMATIC:
            if not (mol.atoms[bond.a].aromatic and mol.atoms[bond.b].aromatic):
                raise ValenceError("aromatic bond with a non-aromatic endpoint")
            arom_adj[bond.a].append(bond.b)
            arom_adj[bond.b].append(bond.a)

    needs = {}
    for i in arom_atoms:
        if not arom_adj[i]:
            raise ValenceError("aromatic atom outside an aromatic ring")
        non_arom = sum(
            1 for _, b in mol.neighbors(i) if b.order != AROMATIC
        )
        needs[i] = _pi_needs(mol, i, len(arom_adj[i]), non_arom)

    pending = sorted(i for i in arom_atoms if needs[i])
    matched: dict[int, int] = {}

    def backtrack(remaining: list[int]) -> bool:
        if not remaining:
            return True
        i = remaining[0]
        rest = remaining[1:]
        if i in matched:
            return backtrack(rest)
        for j in arom_adj[i]:
            if needs.get(j) and j not in matched and j in remaining:
                matched[i] = j
                matched[j] = i
                if backtrack([r for r in rest if r != j]):
                    return True
                del matched[i]
                del matched[j]
        return False

    if not backtrack(pending):
        raise ValenceError("aromatic system cannot be kekulized")
    return {frozenset((i, j)) for i, j in matched.items()}


def effective_bond_sums(mol: MolGraph) -> list[int]:
    """Per-atom sum of bond orders with aromatic bonds resolved.

    Unmatched aromatic bonds count 1, the kekulized double bond counts 2.
    """
    matched = kekulize(mol)
    sums = [0] * len(mol.atoms)
    for bond in mol.bonds:
        if bond.order == AROMATIC:
            order = 2 if frozenset((bond.a, bond.b)) in matched else 1
        else:
            order = bond.order
        sums[bond.a] += order
        sums[bond.b] += order
    return sums


def assign_hydrogens(mol: MolGraph) -> None:
    """Fill implicit hydrogens and enforce the valence table in place.

    Bracket atoms keep their explicit H count and are only checked; organic
    subset atoms are filled to the smallest allowed valence.
    """
    sums = effective_bond_sums(mol)
    for idx, atom in enumerate(mol.atoms):
        if atom.symbol not in VALENCES:
            raise UnknownElement(f"unknown element {atom.symbol!r}")
        vals = allowed_valences(atom.symbol, atom.charge)
        if atom.bracket:
            total = sums[idx] + atom.h_count
            if total > max(vals):
                raise ValenceError(
                    f"atom {idx} ({atom.symbol}) valence {total} exceeds {max(vals)}"
                )
        else:
            fill = None
            for v in vals:
                if v >= sums[idx]:
                    fill = v
                    break
            if fill is None:
                raise ValenceError(
                    f"atom {idx} ({atom.symbol}) valence {sums[idx]} exceeds {max(vals)}"
                )
            atom.h_count = fill - sums[idx]


def validate(mol: MolGraph) -> None:
    """Check structural invariants; raises on violation."""
    n = len(mol.atoms)
    seen_pairs: set[frozenset[int]] = set()
    for bond in mol.bonds:
        if not (0 <= bond.a < n and 0 <= bond.b < n):
            raise ValenceError("bond endpoint out of range")
        if bond.a == bond.b:
            raise ValenceError("self-bond")
        pair = frozenset((bond.a, bond.b))
        if pair in seen_pairs:
            raise ValenceError("duplicate bond")
        seen_pairs.add(pair)
        if bond.order == AROMATIC:
            if not (mol.atoms[bond.a].aromatic and mol.atoms[bond.b].aromatic):
                raise ValenceError("aromatic bond joins non-aromatic atom")
    # Valence check (also re-runs kekulization on aromatic systems).
    sums = effective_bond_sums(mol)
    for idx, atom in enumerate(mol.atoms):
        vals = allowed_valences(atom.symbol, atom.charge)
        if sums[idx] + atom.h_count > max(vals):
            raise ValenceError(f"atom {idx} exceeds valence")


def _ring_pi_count(mol: MolGraph, ring: tuple[int, ...]) -> int | None:
    """Pi electrons contributed by a candidate ring, or None if not a
    conjugated ring (an sp3 member, or an exocyclic double bond)."""
    members = set(ring)
    total = 0
    for idx in ring:
        atom = mol.atoms[idx]
        if atom.symbol not in AROMATIC_ELEMENTS:
            return None
        doubles_in = 0
        doubles_out = 0
        for nbr, bond in mol.neighbors(idx):
            if bond.order == DOUBLE:
                if nbr in members:
                    doubles_in += 1
                else:
                    doubles_out += 1
            elif bond.order in (TRIPLE, AROMATIC):
                return None
        if doubles_out:
            return None
        if doubles_in == 1:
            total += 1
        elif doubles_in == 0:
            # Lone-pair donor: heteroatom with saturated ring position.
            if atom.symbol == "C":
                return None
            total += 2
        else:
            return None
    return total


def perceive_aromaticity(mol: MolGraph) -> None:
    """Flag 5- and 6-membered rings that satisfy a 4n+2 pi count, in place.

    A light-weight model: single rings only, usual atom set, alternating
    double bonds or lone-pair donors. Fused systems aromatize only when each
    ring passes on its own. Aromatic bonds not inside any such ring are
    demoted to single bonds.
    """
    candidates = []
    for ring in mol.rings(max_size=6):
        if len(ring) not in (5, 6):
            continue
        if any(mol.atoms[i].aromatic for i in ring):
            continue  # already aromatic (input was lowercase)
        pi = _ring_pi_count(mol, ring)
        if pi == 6:
            candidates.append(ring)

    for ring in candidates:
        members = set(ring)
        for idx in ring:
            mol.atoms[idx].aromatic = True
        for bond in mol.bonds:
            if bond.a in members and bond.b in members:
                ring_pos = {ring.index(bond.a), ring.index(bond.b)}
                # Only perimeter bonds of this ring, not chords.
                i, j = sorted(ring_pos)
                if j - i == 1 or (i == 0 and j == len(ring) - 1):
                    bond.order = AROMATIC

    # Demote stray aromatic bonds (e.g. biphenyl written without '-').
    arom_rings = [
        set(r)
        for r in mol.rings()
        if all(mol.atoms[i].aromatic for i in r)
    ]
    for bond in mol.bonds:
        if bond.order == AROMATIC:
            if not any(bond.a in r and bond.b in r for r in arom_rings):
                bond.order = SINGLE


def permute_atoms(mol: MolGraph, perm: list[int]) -> MolGraph:
    """Relabel atoms so new index perm[i] holds old atom i (test utility
    for order-invariance checks)."""
    n = len(mol.atoms)
    assert sorted(perm) == list(range(n))
    atoms = [None] * n
    for old, new in enumerate(perm):
        a = mol.atoms[old]
        atoms[new] = Atom(a.symbol, a.charge, a.h_count, a.aromatic, a.bracket)
    bonds = [Bond(perm[b.a], perm[b.b], b.order) for b in mol.bonds]
    return MolGraph(atoms=atoms, bonds=bonds)


def mol_weight(mol: MolGraph) -> float:
    """Molecular weight in Dalton, implicit hydrogens included."""
    total = 0.0
    for atom in mol.atoms:
        mass = ATOMIC_MASS.get(atom.symbol)
        if mass is None:
            raise UnknownElement(f"no mass for element {atom.symbol!r}")
        total += mass + atom.h_count * ATOMIC_MASS["H"]
    return total
