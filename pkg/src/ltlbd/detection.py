"""Strong backdoor detection and verification.

Detection into the Horn class reduces to vertex cover of a conflict graph
(pairs of positive literals), detection into the Krom class to hitting every
variable set of a 3-literal selection.  Both solvers are plain bounded search
trees with deterministic branch order.  Clauses satisfied by every consistent
assignment are dropped before building the graph/family; the detected sets
are backdoors of that satisfiability-equivalent core.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .formula import (Clause, SnfFormula, assignment_modalities,
                      _local_choices, clause_is_horn, clause_is_krom,
                      consistent_assignments, remove_tautologies)

HORN = "horn"
KROM = "krom"


@dataclass(frozen=True)
class ConflictGraph:
    """Undirected graph over the formula variables; a self-loop is stored as
    a singleton edge and forces its vertex into every cover."""

    vertices: frozenset[str]
    edges: frozenset[frozenset[str]]


@dataclass(frozen=True)
class HittingFamily:
    """Variable sets (size 1..3) of all 3-literal selections from clauses."""

    universe: frozenset[str]
    sets: tuple[frozenset[str], ...]


def build_horn_conflict_graph(phi: SnfFormula) -> ConflictGraph:
    """Edge {x, y} iff some clause holds two distinct positive temporal
    literals over x and y (x = y with different modalities gives a loop).

    Expects a tautology-free formula (see :func:`remove_tautologies`).
    """
    edges = set()
    for c in phi.clauses:
        pos = [l for l in c if l.positive]
        for a, b in itertools.combinations(pos, 2):
            edges.add(frozenset((a.var, b.var)))
    return ConflictGraph(frozenset(phi.variables), frozenset(edges))


def build_krom_hitting_family(phi: SnfFormula) -> HittingFamily:
    """One set per selection of exactly three distinct literals of a clause.

    Expects a tautology-free formula.
    """
    sets = set()
    for c in phi.clauses:
        for triple in itertools.combinations(c.literals, 3):
            sets.add(frozenset(l.var for l in triple))
    ordered = tuple(sorted(sets, key=lambda s: tuple(sorted(s))))
    return HittingFamily(frozenset(phi.variables), ordered)


def vertex_cover(graph: ConflictGraph, k: int) -> Optional[frozenset[str]]:
    """A cover of size <= k via a depth-<= k search tree, or None.

    Self-loop vertices are forced; branching picks the smallest uncovered
    edge and tries the lower-named endpoint first.
    """
    forced = {next(iter(e)) for e in graph.edges if len(e) == 1}
    if len(forced) > k:
        return None
    edges = sorted((tuple(sorted(e)) for e in graph.edges if len(e) == 2))

    def search(cover: set[str], budget: int) -> Optional[set[str]]:
        uncovered = next((e for e in edges
                          if e[0] not in cover and e[1] not in cover), None)
        if uncovered is None:
            return cover
        if budget == 0:
            return None
        for v in uncovered:
            got = search(cover | {v}, budget - 1)
            if got is not None:
                return got
        return None

    got = search(set(forced), k - len(forced))
    return frozenset(got) if got is not None else None


def hitting_set_3(family: HittingFamily, k: int) -> Optional[frozenset[str]]:
    """A hitting set of size <= k via a depth-<= k search tree, or None.

    Branches over the elements of the first unhit set in name order.
    """
    sets = [tuple(sorted(s)) for s in family.sets]

    def search(chosen: set[str], budget: int) -> Optional[set[str]]:
        unhit = next((s for s in sets if not chosen.intersection(s)), None)
        if unhit is None:
            return chosen
        if budget == 0:
            return None
        for v in unhit:
            got = search(chosen | {v}, budget - 1)
            if got is not None:
                return got
        return None

    got = search(set(), k)
    return frozenset(got) if got is not None else None


def detect_horn_backdoor(phi: SnfFormula, k: int) -> Optional[frozenset[str]]:
    """A strong Horn backdoor of size <= k of the tautology-free core."""
    core = remove_tautologies(phi)
    return vertex_cover(build_horn_conflict_graph(core), k)


def detect_krom_backdoor(phi: SnfFormula, k: int) -> Optional[frozenset[str]]:
    """A strong Krom backdoor of size <= k of the tautology-free core."""
    core = remove_tautologies(phi)
    return hitting_set_3(build_krom_hitting_family(core), k)


def _clause_in_class(positives: int, total: int, target: str) -> bool:
    if target == HORN:
        return positives <= 1
    if target == KROM:
        return total <= 2
    raise ValueError(f"unknown target class: {target}")


def verify_backdoor(phi: SnfFormula, backdoor: Iterable[str],
                    target: str) -> bool:
    """True iff every consistent assignment over the backdoor (and its modal
    copies) reduces every clause into the target class.

    Satisfied clauses are deleted and falsified literals dropped, so a clause
    matters only if every backdoor variable in it admits a consistent local
    assignment falsifying all of that variable's literals; the surviving part
    is then exactly the clause's non-backdoor literals.  Clause reducts are
    classified individually: an emptied clause belongs to every class but
    does not exempt the clauses next to it.
    """
    back = set(backdoor)
    extra = back - set(phi.variables)
    if extra:
        raise ValueError(f"backdoor mentions unknown variables: {sorted(extra)}")
    mods = assignment_modalities(phi.operators)
    choices = _local_choices(mods)
    mod_pos = {m: i for i, m in enumerate(mods)}

    for c in phi.clauses:
        by_var: dict[str, list] = {}
        rest_pos = 0
        rest_total = 0
        for lit in c:
            if lit.var in back and lit.mod in mod_pos:
                by_var.setdefault(lit.var, []).append(lit)
            else:
                # literals with an undeclared modality are never assigned
                rest_total += 1
                rest_pos += 1 if lit.positive else 0
        deletable = False
        for lits in by_var.values():
            if not any(all(bits[mod_pos[l.mod]] != l.positive for l in lits)
                       for bits in choices):
                deletable = True  # every consistent choice satisfies a literal
                break
        if deletable:
            continue
        if not _clause_in_class(rest_pos, rest_total, target):
            return False
    return True


def verify_backdoor_reference(phi: SnfFormula, backdoor: Iterable[str],
                              target: str) -> bool:
    """Direct restatement of the definition: enumerate every consistent
    assignment, reduce each clause, and classify the survivors.  Exponential;
    used to cross-check :func:`verify_backdoor`.

    Clause reducts are classified individually, without the formula-level
    collapse to the FALSE marker: a surviving over-wide clause disqualifies
    the assignment even when another clause was emptied alongside it.
    """
    check = clause_is_horn if target == HORN else clause_is_krom
    if target not in (HORN, KROM):
        raise ValueError(f"unknown target class: {target}")
    for theta in consistent_assignments(backdoor, phi.operators):
        for c in phi.clauses:
            kept = []
            satisfied = False
            for lit in c:
                val = theta.values.get((lit.var, lit.mod))
                if val is None:
                    kept.append(lit)
                elif val == lit.positive:
                    satisfied = True
                    break
            if not satisfied and not check(Clause(kept)):
                return False
    return True


def minimal_backdoor_bruteforce(phi: SnfFormula,
                                target: str) -> frozenset[str]:
    """Smallest strong backdoor, ties broken lexicographically.

    Scans subsets by increasing size; limited to 12 variables.
    """
    variables = sorted(phi.variables)
    if len(variables) > 12:
        raise ValueError("minimal_backdoor_bruteforce limited to 12 variables")
    for size in range(len(variables) + 1):
        for combo in itertools.combinations(variables, size):
            if verify_backdoor(phi, combo, target):
                return frozenset(combo)
    raise AssertionError("the full variable set is always a backdoor")
