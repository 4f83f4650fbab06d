"""Hot search kernels shared by the solvers and oracles.

The kernels operate on flat integer arrays (CSR clause layout, literals
encoded DIMACS-style as ±(atom+1)).  When numba is importable and the
environment variable ``LTLBD_NO_NUMBA`` is unset, they are JIT-compiled;
otherwise the library falls back to the pure-Python/numpy implementations
below, which produce bit-identical results.  ``benchmarks/kernel_bench.py``
compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("LTLBD_NO_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag not in ("", "0", "false", "no")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via LTLBD_NO_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


def _search_impl(n_atoms, lits_in, starts_in, order):
    """Conflict-driven clause search with a fixed decision order.

    Decisions follow ``order`` with value 0 before 1 and never restart, and
    assignments flip to 1 only through entailed learned clauses, so the
    returned model is the lexicographically smallest one with respect to
    that atom order.  Two-watched-literal propagation, first-UIP learning,
    non-chronological backjumping; no clause deletion.  Returns
    ``(1, values)`` on SAT and ``(0, values)`` on UNSAT.
    """
    n0 = starts_in.shape[0] - 1
    cap_cl = 2 * n0 + 64
    cap_lit = 4 * lits_in.shape[0] + 4 * n_atoms + 64
    lits = np.empty(cap_lit, dtype=np.int32)
    lits[: lits_in.shape[0]] = lits_in
    nlit = lits_in.shape[0]
    starts = np.empty(cap_cl + 1, dtype=np.int32)
    starts[: n0 + 1] = starts_in
    ncl = n0

    val = np.full(n_atoms, -1, dtype=np.int8)
    level = np.zeros(max(n_atoms, 1), dtype=np.int32)
    reason = np.full(max(n_atoms, 1), -1, dtype=np.int32)
    trail = np.empty(max(n_atoms, 1), dtype=np.int32)
    trail_len = 0
    qhead = 0
    lev_start = np.zeros(n_atoms + 2, dtype=np.int32)
    cur_level = 0

    watch_head = np.full(2 * max(n_atoms, 1), -1, dtype=np.int32)
    watch_next = np.empty(2 * cap_cl, dtype=np.int32)
    seen = np.zeros(max(n_atoms, 1), dtype=np.uint8)
    learnt = np.empty(n_atoms + 1, dtype=np.int32)

    # install watches; queue unit clauses, fail on empty ones
    for ci in range(n0):
        size = starts[ci + 1] - starts[ci]
        if size == 0:
            return 0, val
        if size == 1:
            lit = lits[starts[ci]]
            a = lit - 1 if lit > 0 else -lit - 1
            want = 1 if lit > 0 else 0
            if val[a] == -1:
                val[a] = want
                level[a] = 0
                reason[a] = ci
                trail[trail_len] = a
                trail_len += 1
            elif val[a] != want:
                return 0, val
        else:
            for slot in range(2):
                lit = lits[starts[ci] + slot]
                code = 2 * (lit - 1) if lit > 0 else 2 * (-lit - 1) + 1
                node = 2 * ci + slot
                watch_next[node] = watch_head[code]
                watch_head[code] = node

    while True:
        # propagate to fixpoint
        confl = -1
        while qhead < trail_len and confl < 0:
            a = trail[qhead]
            qhead += 1
            fcode = 2 * a + val[a]  # code of the literal this falsifies
            node = watch_head[fcode]
            prev = -1
            while node != -1:
                nxt = watch_next[node]
                ci = node >> 1
                slot = node & 1
                my_pos = starts[ci] + slot
                other_pos = starts[ci] + (1 - slot)
                other = lits[other_pos]
                if other > 0:
                    ob, owant = other - 1, 1
                else:
                    ob, owant = -other - 1, 0
                if val[ob] == owant:
                    prev = node
                    node = nxt
                    continue
                moved = False
                for k in range(starts[ci] + 2, starts[ci + 1]):
                    lk = lits[k]
                    if lk > 0:
                        kb, kwant = lk - 1, 1
                    else:
                        kb, kwant = -lk - 1, 0
                    if val[kb] == -1 or val[kb] == kwant:
                        lits[my_pos] = lk
                        lits[k] = -(a + 1) if val[a] == 1 else (a + 1)
                        # relink this watch node onto the new literal
                        if prev == -1:
                            watch_head[fcode] = nxt
                        else:
                            watch_next[prev] = nxt
                        code = 2 * kb + (0 if kwant == 1 else 1)
                        watch_next[node] = watch_head[code]
                        watch_head[code] = node
                        moved = True
                        break
                if moved:
                    node = nxt
                    continue
                if val[ob] == -1:
                    val[ob] = owant
                    level[ob] = cur_level
                    reason[ob] = ci
                    trail[trail_len] = ob
                    trail_len += 1
                else:
                    confl = ci
                prev = node
                node = nxt
                if confl >= 0:
                    break

        if confl >= 0:
            if cur_level == 0:
                return 0, val
            # first-UIP conflict analysis
            nlearnt = 0
            count = 0
            btlevel = 0
            p_atom = -1
            ci = confl
            idx = trail_len - 1
            while True:
                for k in range(starts[ci], starts[ci + 1]):
                    lit = lits[k]
                    b = lit - 1 if lit > 0 else -lit - 1
                    if b == p_atom or seen[b] == 1 or level[b] == 0:
                        continue
                    seen[b] = 1
                    if level[b] >= cur_level:
                        count += 1
                    else:
                        learnt[nlearnt] = lit
                        nlearnt += 1
                        if level[b] > btlevel:
                            btlevel = level[b]
                while seen[trail[idx]] == 0:
                    idx -= 1
                b = trail[idx]
                idx -= 1
                seen[b] = 0
                count -= 1
                if count == 0:
                    p_atom = b
                    break
                ci = reason[b]
                p_atom = b
            uip_lit = -(p_atom + 1) if val[p_atom] == 1 else (p_atom + 1)
            for i in range(nlearnt):
                lb = learnt[i]
                seen[lb - 1 if lb > 0 else -lb - 1] = 0

            # pop back to the backjump level
            keep = lev_start[btlevel + 1]
            for i in range(keep, trail_len):
                val[trail[i]] = -1
            trail_len = keep
            qhead = keep
            cur_level = btlevel

            # store the learned clause (asserting literal first, then a
            # literal of the backjump level for the second watch)
            size = nlearnt + 1
            if ncl + 1 > cap_cl:
                cap_cl = 2 * cap_cl + 2
                new_starts = np.empty(cap_cl + 1, dtype=np.int32)
                new_starts[: ncl + 1] = starts[: ncl + 1]
                starts = new_starts
                new_watch = np.empty(2 * cap_cl, dtype=np.int32)
                new_watch[: 2 * ncl] = watch_next[: 2 * ncl]
                watch_next = new_watch
            if nlit + size > cap_lit:
                cap_lit = 2 * cap_lit + size
                new_lits = np.empty(cap_lit, dtype=np.int32)
                new_lits[:nlit] = lits[:nlit]
                lits = new_lits
            ci = ncl
            lits[nlit] = uip_lit
            for i in range(nlearnt):
                lits[nlit + 1 + i] = learnt[i]
            if nlearnt > 1:
                for i in range(nlearnt):
                    lb = lits[nlit + 1 + i]
                    b = lb - 1 if lb > 0 else -lb - 1
                    if level[b] == btlevel:
                        tmp = lits[nlit + 1]
                        lits[nlit + 1] = lits[nlit + 1 + i]
                        lits[nlit + 1 + i] = tmp
                        break
            starts[ci + 1] = nlit + size
            ncl += 1
            nlit += size
            if size >= 2:
                for slot in range(2):
                    lit = lits[starts[ci] + slot]
                    code = 2 * (lit - 1) if lit > 0 else 2 * (-lit - 1) + 1
                    node = 2 * ci + slot
                    watch_next[node] = watch_head[code]
                    watch_head[code] = node
            b = p_atom
            val[b] = 1 if uip_lit > 0 else 0
            level[b] = cur_level
            reason[b] = ci
            trail[trail_len] = b
            trail_len += 1
            continue

        # decide the next atom in order, value 0 first
        nxt = -1
        for i in range(n_atoms):
            a = order[i]
            if val[a] == -1:
                nxt = a
                break
        if nxt == -1:
            return 1, val
        cur_level += 1
        lev_start[cur_level] = trail_len
        val[nxt] = 0
        level[nxt] = cur_level
        reason[nxt] = -1
        trail[trail_len] = nxt
        trail_len += 1


def _brute_impl(n_atoms, lits, starts):
    """Scan assignments in ascending order; atom i sits at bit n-1-i.

    Returns ``(1, mask)`` for the first satisfying assignment, else
    ``(0, 0)``.
    """
    n_clauses = starts.shape[0] - 1
    total = 1 << n_atoms
    for m in range(total):
        ok = True
        for ci in range(n_clauses):
            sat = False
            for li in range(starts[ci], starts[ci + 1]):
                lit = lits[li]
                if lit > 0:
                    bit = (m >> (n_atoms - lit)) & 1
                    if bit == 1:
                        sat = True
                        break
                else:
                    bit = (m >> (n_atoms + lit)) & 1
                    if bit == 0:
                        sat = True
                        break
            if not sat:
                ok = False
                break
        if ok:
            return 1, m
    return 0, 0


def _brute_numpy(n_atoms, lits, starts):
    """Vectorized fallback of :func:`_brute_impl` (same result)."""
    n_clauses = starts.shape[0] - 1
    total = 1 << n_atoms
    chunk = 1 << 16
    for base in range(0, total, chunk):
        ms = np.arange(base, min(base + chunk, total), dtype=np.int64)
        ok = np.ones(ms.shape[0], dtype=bool)
        for ci in range(n_clauses):
            sat = np.zeros(ms.shape[0], dtype=bool)
            for li in range(starts[ci], starts[ci + 1]):
                lit = int(lits[li])
                if lit > 0:
                    sat |= ((ms >> (n_atoms - lit)) & 1) == 1
                else:
                    sat |= ((ms >> (n_atoms + lit)) & 1) == 0
            ok &= sat
            if not ok.any():
                break
        hits = np.flatnonzero(ok)
        if hits.size:
            return 1, int(ms[hits[0]])
    return 0, 0


def _star_impl(n_vars, lvar, lstar, lsign, starts, psi_mask):
    """Scan global-assignment candidates for the always-only fragment.

    For each candidate ``g`` over the always-atoms (ascending, variable i at
    bit n-1-i), scan world assignments ``a ⊇ g`` that satisfy every clause
    (always-literals read from ``g``, plain ones from ``a``).  Succeeds when
    some world satisfies the initial-fact mask and every variable with
    ``g``-bit 0 has a witness world where it is false.

    Returns ``(found, g, a0, witnesses)`` with ``witnesses[i]`` the witness
    world mask for variable i (-1 where unneeded).
    """
    n_clauses = starts.shape[0] - 1
    total = 1 << n_vars
    wit = np.full(max(n_vars, 1), -1, dtype=np.int64)
    for g in range(total):
        for i in range(n_vars):
            wit[i] = -1
        need = 0
        for i in range(n_vars):
            if (g >> (n_vars - 1 - i)) & 1 == 0:
                need += 1
        a0 = -1
        found_wits = 0
        for a in range(total):
            if (a & g) != g:
                continue
            ok = True
            for ci in range(n_clauses):
                sat = False
                for li in range(starts[ci], starts[ci + 1]):
                    shift = n_vars - 1 - lvar[li]
                    if lstar[li] == 1:
                        bit = (g >> shift) & 1
                    else:
                        bit = (a >> shift) & 1
                    if bit == lsign[li]:
                        sat = True
                        break
                if not sat:
                    ok = False
                    break
            if not ok:
                continue
            if a0 < 0 and (a & psi_mask) == psi_mask:
                a0 = a
            if found_wits < need:
                for i in range(n_vars):
                    shift = n_vars - 1 - i
                    if (g >> shift) & 1 == 0 and wit[i] < 0 and (a >> shift) & 1 == 0:
                        wit[i] = a
                        found_wits += 1
            if a0 >= 0 and found_wits == need:
                return 1, g, a0, wit
        if a0 >= 0 and found_wits == need:
            return 1, g, a0, wit
    for i in range(n_vars):
        wit[i] = -1
    return 0, 0, 0, wit


def _star_numpy(n_vars, lvar, lstar, lsign, starts, psi_mask):
    """Vectorized fallback of :func:`_star_impl` (same result)."""
    n_clauses = starts.shape[0] - 1
    total = 1 << n_vars
    alphas = np.arange(total, dtype=np.int64)
    bits = [(alphas >> (n_vars - 1 - i)) & 1 for i in range(n_vars)]
    wit = np.full(max(n_vars, 1), -1, dtype=np.int64)
    for g in range(total):
        member = (alphas & g) == g
        for ci in range(n_clauses):
            sat = np.zeros(total, dtype=bool)
            fixed_true = False
            for li in range(starts[ci], starts[ci + 1]):
                v = int(lvar[li])
                if lstar[li] == 1:
                    gbit = (g >> (n_vars - 1 - v)) & 1
                    if gbit == lsign[li]:
                        fixed_true = True
                        break
                else:
                    sat |= bits[v] == lsign[li]
            if fixed_true:
                continue
            member &= sat
            if not member.any():
                break
        if not member.any():
            continue
        psi_ok = member & ((alphas & psi_mask) == psi_mask)
        if not psi_ok.any():
            continue
        a0 = int(alphas[np.argmax(psi_ok)])
        wit[:] = -1
        complete = True
        for i in range(n_vars):
            if (g >> (n_vars - 1 - i)) & 1:
                continue
            cand = member & (bits[i] == 0)
            if not cand.any():
                complete = False
                break
            wit[i] = int(alphas[np.argmax(cand)])
        if complete:
            return 1, g, a0, wit
    wit[:] = -1
    return 0, 0, 0, wit


# Pure paths, importable by name for tests and the benchmark.
search_python = _search_impl
brute_numpy = _brute_numpy
star_numpy = _star_numpy

if HAVE_NUMBA:
    search_solve = _njit(cache=True)(_search_impl)
    brute_scan = _njit(cache=True)(_brute_impl)
    star_scan = _njit(cache=True)(_star_impl)
else:
    search_solve = _search_impl
    brute_scan = _brute_numpy
    star_scan = _star_numpy
