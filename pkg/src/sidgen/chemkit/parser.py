"""SMILES parser: token stream to MolGraph with implicit hydrogens.

Supported: organic subset atoms, aromatic lowercase atoms, bracket atoms
(charge and explicit H; isotope digits and stereo marks are accepted and
ignored), branches, ring closures (digits and %NN, with optional bond
symbols on either side), dot-separated components. '/' and '\\' parse as
single bonds.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownElement
from .graph import (
    AROMATIC,
    AROMATIC_ELEMENTS,
    DOUBLE,
    SINGLE,
    TRIPLE,
    VALENCES,
    Atom,
    Bond,
    MolGraph,
    assign_hydrogens,
    validate,
)
from .tokenizer import lex_smiles

_BOND_ORDERS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC, "/": SINGLE, "\\": SINGLE}

_BRACKET_RE = re.compile(
    r"""^\[
        (?P<isotope>\d+)?
        (?P<symbol>[A-Z][a-z]?|[a-z])
        (?P<chiral>@{1,2})?
        (?P<hcount>H\d*)?
        (?P<charge>\+\+|--|[+-]\d*)?
        (?::\d+)?
    \]$""",
    re.VERBOSE,
)


def _parse_bracket(token: str) -> Atom:
    m = _BRACKET_RE.match(token)
    if m is None:
        raise ParseError(f"malformed bracket atom {token!r}")
    raw = m.group("symbol")
    aromatic = raw[0].islower()
    symbol = raw.capitalize() if aromatic else raw
    if aromatic and symbol not in AROMATIC_ELEMENTS:
        raise ParseError(f"{raw!r} cannot be aromatic")
    if symbol not in VALENCES:
        raise UnknownElement(f"unknown element {symbol!r} in {token!r}")
    h = m.group("hcount")
    if h is None:
        h_count = 0
    elif h == "H":
        h_count = 1
    else:
        h_count = int(h[1:])
    c = m.group("charge")
    if c is None:
        charge = 0
    elif c == "++":
        charge = 2
    elif c == "--":
        charge = -2
    elif len(c) == 1:
        charge = 1 if c == "+" else -1
    else:
        charge = int(c[1:]) * (1 if c[0] == "+" else -1)
    return Atom(symbol=symbol, charge=charge, h_count=h_count, aromatic=aromatic, bracket=True)


def _make_atom(token: str) -> Atom:
    if token.startswith("["):
        return _parse_bracket(token)
    if token in ("Cl", "Br") or token in "BCNOPSFI":
        if token not in VALENCES:
            raise UnknownElement(f"unknown element {token!r}")
        return Atom(symbol=token)
    if token in "bcnops":
        symbol = token.upper()
        if symbol not in AROMATIC_ELEMENTS:
            raise ParseError(f"{token!r} cannot be aromatic")
        return Atom(symbol=symbol, aromatic=True)
    raise ParseError(f"not an atom token: {token!r}")


def parse(smiles: str) -> MolGraph:
    """Parse a SMILES string into a validated molecular graph.

    Raises ParseError for grammar problems (unbalanced rings or branches),
    ValenceError when an atom exceeds the valence table, UnknownToken for
    unlexable input.
    """
    if not smiles:
        raise ParseError("empty SMILES")
    tokens = lex_smiles(smiles)

    mol = MolGraph()
    prev: int | None = None  # atom awaiting the next bond
    pending: int | None = None  # explicit bond order waiting for its partner
    branch_stack: list[int | None] = []
    open_rings: dict[int, tuple[int, int | None]] = {}  # number -> (atom, bond order)

    def add_bond(a: int, b: int, explicit: int | None) -> None:
        if a == b:
            raise ParseError("ring closure bonds an atom to itself")
        if mol.bond_between(a, b) is not None:
            raise ParseError("duplicate bond")
        if explicit is not None:
            order = explicit
        elif mol.atoms[a].aromatic and mol.atoms[b].aromatic:
            order = AROMATIC
        else:
            order = SINGLE
        mol.bonds.append(Bond(a, b, order))

    for token in tokens:
        if token in _BOND_ORDERS:
            if prev is None:
                raise ParseError("bond symbol with no preceding atom")
            if pending is not None:
                raise ParseError("two bond symbols in a row")
            pending = _BOND_ORDERS[token]
        elif token == "(":
            if prev is None:
                raise ParseError("branch opened before any atom")
            if pending is not None:
                raise ParseError("bond symbol before branch opening")
            branch_stack.append(prev)
        elif token == ")":
            if not branch_stack:
                raise ParseError("unmatched ')'")
            if pending is not None:
                raise ParseError("dangling bond at branch close")
            if prev is None or prev == branch_stack[-1]:
                raise ParseError("empty branch")
            prev = branch_stack.pop()
        elif token == ".":
            if pending is not None:
                raise ParseError("bond symbol before '.'")
            if branch_stack:
                raise ParseError("'.' inside a branch")
            if prev is None:
                raise ParseError("'.' before any atom")
            prev = None
        elif token.isdigit() or token.startswith("%"):
            num = int(token[1:]) if token.startswith("%") else int(token)
            if prev is None:
                raise ParseError("ring closure digit before any atom")
            if num in open_rings:
                other, other_order = open_rings.pop(num)
                if pending is not None and other_order is not None and pending != other_order:
                    raise ParseError("conflicting ring closure bond orders")
                add_bond(other, prev, pending if pending is not None else other_order)
            else:
                open_rings[num] = (prev, pending)
            pending = None
        else:
            atom = _make_atom(token)
            mol.atoms.append(atom)
            idx = len(mol.atoms) - 1
            if prev is not None:
                add_bond(prev, idx, pending)
            elif pending is not None:
                raise ParseError("bond symbol with no preceding atom")
            pending = None
            prev = idx

    if pending is not None:
        raise ParseError("dangling bond at end of input")
    if branch_stack:
        raise ParseError("unclosed branch")
    if open_rings:
        raise ParseError(f"unclosed ring closures: {sorted(open_rings)}")
    if not mol.atoms:
        raise ParseError("no atoms")

    assign_hydrogens(mol)
    validate(mol)
    return mol


def is_valid(smiles) -> bool:
    """True iff the string parses to a molecule passing all graph checks.

    Never raises; any failure maps to False.
    """
    if not isinstance(smiles, str) or not smiles:
        return False
    try:
        parse(smiles)
    except Exception:
        return False
    return True
