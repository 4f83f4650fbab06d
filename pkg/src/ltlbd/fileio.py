"""Text formats: formula files, model tables, and DIMACS-style graph input.

Formula files are line based.  ``#`` starts a comment.  The header line
``operators: F P *`` declares the operator set (any subset, space
separated); an optional ``init: v1, v2`` line lists the initial facts; each
``clause: LIT | LIT | ...`` line holds one clause, where a literal is
``~``-negation, an optional ``[F]``/``[P]``/``[*]`` tag, and a name.

Model tables carry a ``vars:`` header, a ``start: K`` line naming the world
of the initial facts, a ``left:`` row, one ``world K:`` row per window world,
and a ``right:`` row, each with space-separated 0/1 cells in header order.
"""

from __future__ import annotations

import re

from .formula import Clause, Lit, Mod, SnfFormula, VAR_NAME_RE
from .interp import FiniteWindowInterpretation
from .reductions import Graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None,
                 col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            where = f" ({where})"
        super().__init__(f"{message}{where}")


_LIT_RE = re.compile(r"(~)?(\[[FP*]\])?([A-Za-z][A-Za-z0-9_]*)\Z")
_TAG_MOD = {"[F]": Mod.FUT, "[P]": Mod.PAST, "[*]": Mod.STAR}
_OP_TOKEN = {"F": Mod.FUT, "P": Mod.PAST, "*": Mod.STAR}
_MOD_OP_TOKEN = {m: t for t, m in _OP_TOKEN.items()}


def _strip_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def _int(token: str, ln: int) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise ParseError(f"expected an integer, got {token.strip()!r}", ln) from None


def parse_snf(text: str) -> SnfFormula:
    operators = None
    initial: list[str] = []
    clauses: list[Clause] = []
    saw_any = False
    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        saw_any = True
        key, sep, body = line.partition(":")
        if not sep:
            raise ParseError("expected 'directive: ...'", ln, 1)
        key = key.strip()
        if key == "operators":
            if operators is not None:
                raise ParseError("duplicate operators line", ln)
            operators = set()
            for tok in body.split():
                if tok not in _OP_TOKEN:
                    raise ParseError(f"unknown operator token {tok!r}", ln,
                                     raw.find(tok) + 1)
                operators.add(_OP_TOKEN[tok])
        elif key == "init":
            if operators is None:
                raise ParseError("operators line must come first", ln)
            for piece in body.split(","):
                name = piece.strip()
                if not VAR_NAME_RE.match(name):
                    raise ParseError(f"invalid variable name {name!r}", ln,
                                     raw.find(piece.strip() or ",") + 1)
                initial.append(name)
        elif key == "clause":
            if operators is None:
                raise ParseError("operators line must come first", ln)
            lits = []
            if body.strip():
                for piece in body.split("|"):
                    tok = piece.strip()
                    col = raw.find(tok) + 1 if tok else raw.find("|") + 1
                    m = _LIT_RE.match(tok)
                    if not m:
                        raise ParseError(f"malformed literal {tok!r}", ln, col)
                    neg, tag, name = m.groups()
                    lits.append(Lit(name, _TAG_MOD.get(tag, Mod.NONE),
                                    neg is None))
            clauses.append(Clause(lits))
        else:
            raise ParseError(f"unknown directive {key!r}", ln, 1)
    if operators is None:
        raise ParseError("empty input: missing operators line",
                         1 if not saw_any else ln)
    return SnfFormula(frozenset(operators), tuple(initial), tuple(clauses))


def format_snf(phi: SnfFormula) -> str:
    """Canonical text: operators in F P * order, initial facts sorted,
    clauses in formula order with literals already canonical."""
    ops = " ".join(_MOD_OP_TOKEN[m]
                   for m in (Mod.FUT, Mod.PAST, Mod.STAR) if m in phi.operators)
    lines = [f"operators: {ops}".rstrip()]
    if phi.initial:
        lines.append("init: " + ", ".join(phi.initial))
    for c in phi.clauses:
        body = " | ".join(str(lit) for lit in c)
        lines.append(f"clause: {body}".rstrip())
    return "\n".join(lines) + "\n"


def _bits(row: dict, order: list[str]) -> str:
    return " ".join("1" if row[v] else "0" for v in order)


def format_model_table(m: FiniteWindowInterpretation) -> str:
    order = sorted(m.left)
    lines = ["vars: " + " ".join(order), f"start: {m.start}",
             "left: " + _bits(m.left, order)]
    for i, row in enumerate(m.window):
        lines.append(f"world {m.lo + i}: " + _bits(row, order))
    lines.append("right: " + _bits(m.right, order))
    return "\n".join(lines) + "\n"


def parse_model_table(text: str) -> FiniteWindowInterpretation:
    order: list[str] | None = None
    start: int | None = None
    left = right = None
    worlds: dict[int, dict] = {}

    def parse_row(body: str, ln: int) -> dict:
        cells = body.split()
        if len(cells) != len(order):
            raise ParseError(
                f"expected {len(order)} cells, got {len(cells)}", ln)
        row = {}
        for v, cell in zip(order, cells):
            if cell not in ("0", "1"):
                raise ParseError(f"cell must be 0 or 1, got {cell!r}", ln)
            row[v] = cell == "1"
        return row

    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        key, sep, body = line.partition(":")
        if not sep:
            raise ParseError("expected 'row: ...'", ln, 1)
        key = key.strip()
        if key == "vars":
            if order is not None:
                raise ParseError("duplicate vars line", ln)
            order = body.split()
            if len(set(order)) != len(order) or not order:
                raise ParseError("vars line needs distinct names", ln)
        elif order is None:
            raise ParseError("vars line must come first", ln)
        elif key == "start":
            start = _int(body, ln)
        elif key == "left":
            left = parse_row(body, ln)
        elif key == "right":
            right = parse_row(body, ln)
        elif key.startswith("world"):
            z = _int(key[len("world"):], ln)
            if z in worlds:
                raise ParseError(f"duplicate world {z}", ln)
            worlds[z] = parse_row(body, ln)
        else:
            raise ParseError(f"unknown row {key!r}", ln, 1)

    if order is None or left is None or right is None or not worlds:
        raise ParseError("model table needs vars, left, worlds, and right")
    lo, hi = min(worlds), max(worlds)
    if set(worlds) != set(range(lo, hi + 1)):
        raise ParseError("window worlds must be contiguous")
    if start is None:
        start = 0 if lo <= 0 <= hi else lo
    return FiniteWindowInterpretation(
        left=left, window=tuple(worlds[z] for z in range(lo, hi + 1)),
        lo=lo, right=right, start=start)


def parse_dimacs_col(text: str) -> Graph:
    n = None
    edges = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"malformed problem line {line!r}", ln)
            if n is not None:
                raise ParseError("duplicate problem line", ln)
            n = _int(parts[2], ln)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", ln)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", ln)
            i, j = _int(parts[1], ln), _int(parts[2], ln)
            if i == j:
                raise ParseError(f"self-loop on vertex {i}", ln)
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"edge ({i},{j}) outside 1..{n}", ln)
            edges.append((min(i, j), max(i, j)))
        else:
            raise ParseError(f"unknown line {line!r}", ln, 1)
    if n is None:
        raise ParseError("missing problem line")
    return Graph(n, frozenset(edges))


def format_dimacs_col(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {len(graph.edges)}"]
    lines.extend(f"e {i} {j}" for i, j in graph.sorted_edges())
    return "\n".join(lines) + "\n"
