"""Backdoor evaluation for the always-only fragment.

Given a strong Horn backdoor X, satisfiability is decided by enumerating
candidate sets of assignments over X together with a designated member, and
solving one propositional Horn formula per candidate.  The Horn formula lays
out a bounded number of world copies per assignment block, shares one global
atom per remaining variable across all copies, and ties the two together with
consistency clauses, so its models are exactly the bounded assignment sets
witnessing satisfiability.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .detection import HORN, verify_backdoor
from .formula import (ConsistentAssignment, Mod, SnfFormula, Clause,
                      remove_tautologies, reduct)
from .interp import (AssignmentSet, FiniteWindowInterpretation,
                     from_assignment_set, models)
from .propsat import (PropCnf, copy_atom, global_atom, horn_sat, plain_atom)


@dataclass(frozen=True)
class ThetaSet:
    """A nonempty set of assignments over the backdoor, with a designated
    member that must carry the initial facts."""

    members: tuple[dict, ...]
    designated: dict

    def __post_init__(self):
        if not self.members:
            raise ValueError("theta set must be nonempty")
        if self.designated not in self.members:
            raise ValueError("designated assignment must belong to the set")


@dataclass(frozen=True)
class EvalResult:
    verdict: str  # "SAT" | "UNSAT"
    theta_set: Optional[ThetaSet] = None
    horn_model: Optional[dict] = None
    assignment_set: Optional[AssignmentSet] = None
    interpretation: Optional[FiniteWindowInterpretation] = None

    @property
    def satisfiable(self) -> bool:
        return self.verdict == "SAT"


def assignments_over(variables: Iterable[str]) -> list[dict]:
    """All assignments over the variables, lexicographic (sorted names,
    earlier variables most significant, false before true)."""
    vs = sorted(set(variables))
    return [dict(zip(vs, bits))
            for bits in itertools.product((False, True), repeat=len(vs))]


def candidate_theta_sets(variables: Iterable[str]) -> Iterator[ThetaSet]:
    """Candidates in deterministic order: sets by increasing cardinality,
    then lexicographic member indices; the designated member in set order."""
    pool = assignments_over(variables)
    for size in range(1, len(pool) + 1):
        for combo in itertools.combinations(range(len(pool)), size):
            members = tuple(pool[i] for i in combo)
            for designated in members:
                yield ThetaSet(members, designated)


def global_assignment(members: Iterable[dict], variables: Iterable[str],
                      local: Optional[dict] = None) -> ConsistentAssignment:
    """Unanimity-derived assignment to the always-copies of ``variables``:
    the always-copy of v is true iff every member sets v true.  With
    ``local`` given, the plain copies take its values."""
    members = list(members)
    values = {}
    for v in variables:
        values[(v, Mod.STAR)] = all(m[v] for m in members)
        if local is not None:
            values[(v, Mod.NONE)] = bool(local[v])
    return ConsistentAssignment(values)


def propositionalize(clauses: Iterable[Clause]) -> PropCnf:
    """Map always-literals to global atoms and bare variables to plain
    atoms, preserving clause structure.  Rejects past/future literals."""
    out = []
    for c in clauses:
        lits = []
        for lit in c:
            if lit.mod is Mod.NONE:
                lits.append((plain_atom(lit.var), lit.positive))
            elif lit.mod is Mod.STAR:
                lits.append((global_atom(lit.var), lit.positive))
            else:
                raise ValueError(
                    f"literal {lit} outside the always-only fragment")
        out.append(tuple(lits))
    return PropCnf(out)


def relabel_copy(cnf: PropCnf, variables: Iterable[str], index: int,
                 label: str) -> PropCnf:
    """Replace plain atoms over ``variables`` with labelled copies; global
    atoms (and atoms over other variables) are shared untouched."""
    if index < 1:
        raise ValueError("copy index must be >= 1")
    vs = set(variables)
    out = []
    for c in cnf.clauses:
        lits = []
        for atom, pos in c:
            if atom.kind == "plain" and atom.var in vs:
                atom = copy_atom(atom.var, index, label)
            lits.append((atom, pos))
        out.append(tuple(lits))
    return PropCnf(out)


def _theta_label(theta: dict) -> str:
    return "".join("1" if theta[v] else "0" for v in sorted(theta))


def _build_encoding(phi: SnfFormula, backdoor: tuple[str, ...],
                    ts: ThetaSet) -> PropCnf:
    rest = sorted(set(phi.variables) - set(backdoor))
    copies = len(rest) + 1
    clauses: list[tuple] = []
    clause_part = SnfFormula(phi.operators, (), phi.clauses,
                             variables=phi.variables)

    for theta in ts.members:
        glob = global_assignment(ts.members, backdoor, theta)
        block = propositionalize(reduct(clause_part, glob).clauses)
        label = _theta_label(theta)
        for i in range(1, copies + 1):
            clauses.extend(relabel_copy(block, rest, i, label).clauses)

    # initial facts ride on the first copy of the designated block
    label0 = _theta_label(ts.designated)
    for v in phi.initial:
        if v in ts.designated:
            if not ts.designated[v]:
                clauses.append(())  # dead candidate
        else:
            clauses.append(((copy_atom(v, 1, label0), True),))

    # consistency: a global atom forces every copy, and cannot hold unless
    # all copies do
    for v in rest:
        wide = [(global_atom(v), True)]
        for theta in ts.members:
            label = _theta_label(theta)
            for i in range(1, copies + 1):
                clauses.append(((global_atom(v), False),
                                (copy_atom(v, i, label), True)))
                wide.append((copy_atom(v, i, label), False))
        clauses.append(tuple(wide))
    return PropCnf(clauses)


def build_horn_encoding(phi: SnfFormula, backdoor: Iterable[str],
                        ts: ThetaSet) -> PropCnf:
    """The Horn formula whose satisfiability decides one candidate.

    Requires the always-only fragment and a verified strong Horn backdoor;
    the result is then guaranteed Horn.
    """
    _check_fragment(phi)
    back = tuple(sorted(set(backdoor)))
    if not verify_backdoor(phi, back, HORN):
        raise ValueError("backdoor does not verify for the Horn class")
    cnf = _build_encoding(phi, back, ts)
    assert cnf.is_horn, "encoding of a verified backdoor must be Horn"
    return cnf


def encoding_size_bound(phi: SnfFormula, backdoor: Iterable[str]) -> int:
    """Closed-form clause-count bound on any candidate encoding."""
    k = len(set(backdoor))
    r = len(set(phi.variables) - set(backdoor)) + 1
    size = len(phi.clauses) + len(phi.initial)
    return (1 << k) * r * size + 2 * (1 << k) * r * r


def _check_fragment(phi: SnfFormula) -> None:
    if not phi.operators <= {Mod.STAR}:
        raise ValueError("backdoor evaluation handles the always-only "
                         f"fragment; formula declares {sorted(m.name for m in phi.operators)}")


def evaluate_horn_star(phi: SnfFormula, backdoor: Iterable[str],
                       on_candidate=None) -> EvalResult:
    """Decide satisfiability through a strong Horn backdoor.

    Tautological clauses are dropped first (they hold in every
    interpretation, and detected backdoors are backdoors of that core).
    Candidates are tried in the order of :func:`candidate_theta_sets` with a
    short-circuit on the first satisfiable encoding, so the certificate is
    reproducible.  On SAT the certificate is re-checked against the original
    formula.  ``on_candidate(ts, cnf)`` is invoked for every encoding built,
    e.g. to dump it.
    """
    _check_fragment(phi)
    core = remove_tautologies(phi)
    back = tuple(sorted(set(backdoor)))
    if not verify_backdoor(core, back, HORN):
        raise ValueError("backdoor does not verify for the Horn class")
    rest = sorted(set(core.variables) - set(back))
    copies = len(rest) + 1

    for ts in candidate_theta_sets(back):
        cnf = _build_encoding(core, back, ts)
        if on_candidate is not None:
            on_candidate(ts, cnf)
        model = horn_sat(cnf)
        if model is None:
            continue
        members = []
        designated_row = None
        for theta in ts.members:
            label = _theta_label(theta)
            for i in range(1, copies + 1):
                row = dict(theta)
                for v in rest:
                    row[v] = model[copy_atom(v, i, label)]
                members.append(row)
                if theta == ts.designated and i == 1:
                    designated_row = row
        aset = AssignmentSet(tuple(members), designated_row)
        interp = from_assignment_set(aset)
        if not models(interp, phi):
            raise AssertionError("certificate failed the model check")
        return EvalResult("SAT", ts, model, aset, interp)
    return EvalResult("UNSAT")
