"""Propositional CNF backends.

Atoms are structural: a plain stand-in for a variable, a global stand-in for
its always-literal, or a labelled world copy.  Solvers: linear Horn-SAT with
minimal models, implication-graph 2-SAT, an exhaustive scanner used as a test
oracle, and a deterministic DPLL for the bounded searches in the oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from . import _kernels


class Atom(NamedTuple):
    """One propositional atom; identity is structural on all fields."""

    kind: str  # "plain" | "global" | "copy"
    var: str
    index: int = 0
    label: str = ""

    def display(self) -> str:
        if self.kind == "plain":
            return self.var
        if self.kind == "global":
            return f"[*]{self.var}"
        return f"{self.var}^{self.index}_{self.label}"


def plain_atom(var: str) -> Atom:
    return Atom("plain", var)


def global_atom(var: str) -> Atom:
    return Atom("global", var)


def copy_atom(var: str, index: int, label: str) -> Atom:
    if index < 1:
        raise ValueError("copy index must be >= 1")
    return Atom("copy", var, index, label)


#: A signed atom: (atom, positive).
PLit = tuple


@dataclass(frozen=True)
class PropCnf:
    """A conjunction of clauses; each clause a tuple of signed atoms."""

    clauses: tuple[tuple[PLit, ...], ...]

    def __init__(self, clauses: Iterable[Iterable[PLit]] = ()):
        norm = tuple(tuple(dict.fromkeys(tuple(l) for l in c)) for c in clauses)
        object.__setattr__(self, "clauses", norm)

    def atoms(self) -> list[Atom]:
        seen = {a for c in self.clauses for a, _ in c}
        return sorted(seen)

    @property
    def is_horn(self) -> bool:
        return all(sum(1 for _, pos in c if pos) <= 1 for c in self.clauses)

    @property
    def is_krom(self) -> bool:
        return all(len(c) <= 2 for c in self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


Model = Optional[dict]  # Atom -> bool; None means unsatisfiable


def _int_arrays(cnf: PropCnf, atoms: list[Atom]):
    idx = {a: i for i, a in enumerate(atoms)}
    lits = []
    starts = [0]
    for c in cnf.clauses:
        for a, pos in c:
            code = idx[a] + 1
            lits.append(code if pos else -code)
        starts.append(len(lits))
    return (np.asarray(lits, dtype=np.int32),
            np.asarray(starts, dtype=np.int32))


def brute_sat(cnf: PropCnf) -> Model:
    """Exhaustive oracle: first satisfying assignment in canonical atom
    order (value 0 before 1), or None.  Limited to 24 atoms."""
    atoms = cnf.atoms()
    n = len(atoms)
    if n > 24:
        raise ValueError(f"brute_sat limited to 24 atoms, got {n}")
    lits, starts = _int_arrays(cnf, atoms)
    found, mask = _kernels.brute_scan(n, lits, starts)
    if not found:
        return None
    return {a: bool((mask >> (n - 1 - i)) & 1) for i, a in enumerate(atoms)}


def horn_sat(cnf: PropCnf) -> Model:
    """Unit-propagation Horn solver returning the minimal model.

    Every atom true in the returned model is forced; all others are false.
    Raises on non-Horn input.
    """
    if not cnf.is_horn:
        raise ValueError("horn_sat requires a Horn formula")
    atoms = cnf.atoms()
    true_atoms: set[Atom] = set()
    # clause -> (pending distinct negative atoms, positive atom or None)
    pending: list[set[Atom]] = []
    heads: list[Optional[Atom]] = []
    occ_neg: dict[Atom, list[int]] = {}
    queue: list[Atom] = []

    for c in cnf.clauses:
        negs = {a for a, pos in c if not pos}
        pos = next((a for a, p in c if p), None)
        if pos is not None and pos in negs:
            continue  # tautological clause, never constrains
        ci = len(pending)
        pending.append(set(negs))
        heads.append(pos)
        for a in negs:
            occ_neg.setdefault(a, []).append(ci)
        if not negs:
            if pos is None:
                return None  # empty clause
            if pos not in true_atoms:
                true_atoms.add(pos)
                queue.append(pos)

    while queue:
        a = queue.pop()
        for ci in occ_neg.get(a, ()):
            negs = pending[ci]
            negs.discard(a)
            if not negs:
                head = heads[ci]
                if head is None:
                    return None
                if head not in true_atoms:
                    true_atoms.add(head)
                    queue.append(head)
    return {a: a in true_atoms for a in atoms}


def two_sat(cnf: PropCnf) -> Model:
    """2-SAT via strongly connected components of the implication graph.

    Unsatisfiable iff some atom shares a component with its negation; the
    model sets an atom true iff its node's component is found before the
    negation's (components complete in reverse topological order).
    """
    if not cnf.is_krom:
        raise ValueError("two_sat requires a Krom formula")
    atoms = cnf.atoms()
    n = len(atoms)
    idx = {a: i for i, a in enumerate(atoms)}

    def node(atom, pos):  # 2i for positive, 2i+1 for negative
        return 2 * idx[atom] + (0 if pos else 1)

    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for c in cnf.clauses:
        if len(c) == 0:
            return None
        if len(c) == 1:
            (a, pos), = c
            adj[node(a, not pos)].append(node(a, pos))
        else:
            (a, apos), (b, bpos) = c
            adj[node(a, not apos)].append(node(b, bpos))
            adj[node(b, not bpos)].append(node(a, apos))

    comp = _tarjan_scc(adj)
    model = {}
    for a in atoms:
        cp, cn = comp[node(a, True)], comp[node(a, False)]
        if cp == cn:
            return None
        model[a] = cp < cn
    return model


def _tarjan_scc(adj: list[list[int]]) -> list[int]:
    """Component ids in completion order, iteratively (no recursion)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    n_comp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while ei < len(adj[v]):
                w = adj[v][ei]
                ei += 1
                if index[w] == -1:
                    work[-1] = (v, ei)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comp


def solve_cnf(cnf: PropCnf, branch_first: Iterable[Atom] = ()) -> Model:
    """Complete deterministic search for arbitrary CNF.

    Decisions follow ``branch_first`` in the given order (remaining atoms
    appended in canonical order), value false before true, so the returned
    model is lexicographically minimal for that order.
    """
    atoms = cnf.atoms()
    n = len(atoms)
    idx = {a: i for i, a in enumerate(atoms)}
    head = [idx[a] for a in branch_first if a in idx]
    seen = set(head)
    order = head + [i for i in range(n) if i not in seen]
    lits, starts = _int_arrays(cnf, atoms)
    status, values = _kernels.search_solve(
        n, lits, starts, np.asarray(order, dtype=np.int32))
    if not status:
        return None
    return {a: bool(values[i]) for i, a in enumerate(atoms)}


def to_dimacs(cnf: PropCnf) -> tuple[str, list[str]]:
    """DIMACS text plus the sidecar name table (line i+1 names atom i+1)."""
    atoms = cnf.atoms()
    idx = {a: i + 1 for i, a in enumerate(atoms)}
    lines = [f"p cnf {len(atoms)} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        nums = [idx[a] if pos else -idx[a] for a, pos in c]
        lines.append(" ".join(str(x) for x in nums + [0]))
    names = [f"{i + 1} {a.display()}" for i, a in enumerate(atoms)]
    return "\n".join(lines) + "\n", names
