"""Eventually-constant temporal interpretations over the integers.

An interpretation is frozen to one assignment on every world left of a finite
window, explicit inside the window, and frozen to another assignment right of
it.  Every model this toolkit constructs or searches for has this shape, and
clause evaluation stabilises two worlds beyond each window edge, so finite
checks suffice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import Lit, Mod, SnfFormula

WorldAssignment = dict  # Mapping[str, bool], total on the variable set in use


@dataclass(frozen=True)
class FiniteWindowInterpretation:
    """Worlds below ``lo`` carry ``left``, worlds above ``hi`` carry
    ``right``, and ``window[z - lo]`` is the assignment at world ``z``.

    ``start`` is the world where the initial facts are evaluated; the
    satisfaction relation is shift-invariant so any window placement with
    ``lo <= start <= hi`` is admissible.
    """

    left: WorldAssignment
    window: tuple[WorldAssignment, ...]
    lo: int
    right: WorldAssignment
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(dict(r) for r in self.window))
        object.__setattr__(self, "left", dict(self.left))
        object.__setattr__(self, "right", dict(self.right))
        if not self.window:
            raise ValueError("window must contain at least one world")
        if not self.lo <= self.start <= self.hi:
            raise ValueError("start world must lie inside the window")
        keys = set(self.left)
        for row in self.window:
            if set(row) != keys:
                raise ValueError("all worlds must assign the same variables")
        if set(self.right) != keys:
            raise ValueError("all worlds must assign the same variables")

    @property
    def hi(self) -> int:
        return self.lo + len(self.window) - 1

    def vars(self) -> tuple[str, ...]:
        return tuple(sorted(self.left))

    def row(self, world: int) -> WorldAssignment:
        """Assignment holding at an arbitrary integer world (no copy)."""
        if world < self.lo:
            return self.left
        if world > self.hi:
            return self.right
        return self.window[world - self.lo]


def assign(m: FiniteWindowInterpretation, world: int) -> WorldAssignment:
    """The assignment holding at ``world`` (within the sentinel range)."""
    _check_world(m, world)
    return dict(m.row(world))


def _check_world(m: FiniteWindowInterpretation, world: int) -> None:
    if not m.lo - 2 <= world <= m.hi + 2:
        raise ValueError(
            f"world {world} outside sentinel range [{m.lo - 2}, {m.hi + 2}]")


def holds_literal(m: FiniteWindowInterpretation, world: int, lit: Lit) -> bool:
    """Evaluate one temporal literal at an integer world.

    Future/past literals quantify over the frozen regions through the edge
    assignments; values are constant for worlds at least two outside the
    window, which is why callers never need to look further.
    """
    _check_world(m, world)
    v = lit.var
    if v not in m.left:
        raise ValueError(f"unknown variable {v!r}")
    if lit.mod is Mod.NONE:
        value = m.row(world)[v]
    elif lit.mod is Mod.STAR:
        value = (m.left[v] and m.right[v]
                 and all(row[v] for row in m.window))
    elif lit.mod is Mod.FUT:
        # all worlds k > world: window rows above it, the right edge, and the
        # left edge when left-region worlds lie strictly between
        value = m.right[v]
        if value and world <= m.lo - 2:
            value = m.left[v]
        if value:
            first = max(world + 1, m.lo)
            value = all(row[v] for row in m.window[first - m.lo:])
    else:  # Mod.PAST
        value = m.left[v]
        if value and world >= m.hi + 2:
            value = m.right[v]
        if value:
            last = min(world - 1, m.hi)
            value = all(row[v] for row in m.window[: max(last - m.lo + 1, 0)])
    return value if lit.positive else not value


class _LitTable:
    """Per-variable prefix/suffix tables for O(1) literal evaluation."""

    def __init__(self, m: FiniteWindowInterpretation):
        self.m = m
        self.star = {}
        self.suffix = {}   # suffix[v][i]: all window rows from index i on
        self.prefix = {}   # prefix[v][i]: all window rows up to index i - 1
        n = len(m.window)
        for v in m.left:
            col = [row[v] for row in m.window]
            suf = [True] * (n + 1)
            for i in range(n - 1, -1, -1):
                suf[i] = col[i] and suf[i + 1]
            pre = [True] * (n + 1)
            for i in range(n):
                pre[i + 1] = pre[i] and col[i]
            self.suffix[v] = suf
            self.prefix[v] = pre
            self.star[v] = m.left[v] and m.right[v] and suf[0]

    def holds(self, world: int, lit: Lit) -> bool:
        m = self.m
        v = lit.var
        if lit.mod is Mod.NONE:
            value = m.row(world)[v]
        elif lit.mod is Mod.STAR:
            value = self.star[v]
        elif lit.mod is Mod.FUT:
            value = m.right[v]
            if value and world <= m.lo - 2:
                value = m.left[v]
            if value:
                first = max(world + 1, m.lo)
                value = self.suffix[v][min(first - m.lo, len(m.window))]
        else:
            value = m.left[v]
            if value and world >= m.hi + 2:
                value = m.right[v]
            if value:
                last = min(world - 1, m.hi)
                value = self.prefix[v][max(last - m.lo + 1, 0)]
        return value if lit.positive else not value


def models(m: FiniteWindowInterpretation, phi: SnfFormula) -> bool:
    """True iff the interpretation satisfies the formula.

    Initial facts are checked at the start world; every clause is checked at
    every world from two below the window to two above it, which covers all
    integers by stabilisation.
    """
    missing = set(phi.variables) - set(m.left)
    if missing:
        raise ValueError(f"interpretation lacks variables: {sorted(missing)}")
    table = _LitTable(m)
    for v in phi.initial:
        if not m.row(m.start)[v]:
            return False
    worlds_range = range(m.lo - 2, m.hi + 3)
    for clause in phi.clauses:
        for z in worlds_range:
            if not any(table.holds(z, lit) for lit in clause):
                return False
    return True


def worlds(m: FiniteWindowInterpretation, theta: Mapping) -> set[int]:
    """Worlds whose assignment agrees with ``theta``, clipped to the two
    sentinel indices that stand for the frozen regions."""
    def agrees(row):
        return all(row.get(v) == b for v, b in theta.items())

    out = set()
    if agrees(m.left):
        out.add(m.lo - 1)
    for i, row in enumerate(m.window):
        if agrees(row):
            out.add(m.lo + i)
    if agrees(m.right):
        out.add(m.hi + 1)
    return out


@dataclass(frozen=True)
class AssignmentSet:
    """A nonempty set of world assignments with a designated initial one."""

    members: tuple[WorldAssignment, ...]
    initial: WorldAssignment

    def __post_init__(self):
        uniq = []
        seen = set()
        for a in self.members:
            key = tuple(sorted(a.items()))
            if key not in seen:
                seen.add(key)
                uniq.append(dict(a))
        object.__setattr__(self, "members", tuple(uniq))
        object.__setattr__(self, "initial", dict(self.initial))
        if not self.members:
            raise ValueError("assignment set must be nonempty")
        if tuple(sorted(self.initial.items())) not in seen:
            raise ValueError("designated assignment must belong to the set")


def _bitvec(a: WorldAssignment) -> tuple:
    return tuple(a[v] for v in sorted(a))


def from_assignment_set(aset: AssignmentSet) -> FiniteWindowInterpretation:
    """Lay an assignment set out as an interpretation: the designated
    assignment first (worlds 0 and all worlds left of it), the remaining
    members in lexicographic bit order, and the last row frozen rightwards."""
    a0 = aset.initial
    a0_key = tuple(sorted(a0.items()))
    rest = [a for a in aset.members if tuple(sorted(a.items())) != a0_key]
    rest.sort(key=_bitvec)
    rows = [a0] + rest
    return FiniteWindowInterpretation(
        left=a0, window=tuple(rows), lo=0, right=rows[-1], start=0)


def project(aset: AssignmentSet, variables: Iterable[str]) -> AssignmentSet:
    """Restrict every member (and the designated one) to ``variables``."""
    vs = set(variables)
    members = tuple({v: a[v] for v in vs} for a in aset.members)
    initial = {v: aset.initial[v] for v in vs}
    return AssignmentSet(members, initial)
