import itertools
import random

import pytest

from ltlbd.detection import (HORN, KROM, ConflictGraph, HittingFamily,
                             build_horn_conflict_graph,
                             build_krom_hitting_family, detect_horn_backdoor,
                             detect_krom_backdoor, hitting_set_3,
                             minimal_backdoor_bruteforce, verify_backdoor,
                             verify_backdoor_reference, vertex_cover)
from ltlbd.formula import Clause, Lit, Mod, SnfFormula, remove_tautologies
from ltlbd.gen import random_formula


def formula(clauses, ops={Mod.STAR}, initial=()):
    return SnfFormula(frozenset(ops), tuple(initial), tuple(clauses))


def covers(graph, chosen):
    chosen = set(chosen)
    return all(chosen & set(e) for e in graph.edges)


def hits(family, chosen):
    chosen = set(chosen)
    return all(chosen & s for s in family.sets)


class TestConflictGraph:
    def test_two_positive_literals_give_an_edge(self):
        phi = formula([Clause([Lit("x"), Lit("y"), Lit("z", positive=False)])])
        g = build_horn_conflict_graph(phi)
        assert g.edges == frozenset({frozenset({"x", "y"})})

    def test_same_variable_two_modalities_gives_self_loop(self):
        phi = formula([Clause([Lit("x"), Lit("x", Mod.FUT)])],
                      ops={Mod.STAR, Mod.FUT})
        g = build_horn_conflict_graph(phi)
        assert g.edges == frozenset({frozenset({"x"})})

    def test_horn_formula_has_no_edges(self):
        phi = formula([Clause([Lit("x", positive=False), Lit("y")]),
                       Clause([Lit("z", positive=False)])])
        assert build_horn_conflict_graph(phi).edges == frozenset()


class TestHittingFamily:
    def test_three_literal_clause(self):
        phi = formula([Clause([Lit("x", positive=False), Lit("y"),
                               Lit("z", Mod.FUT)])],
                      ops={Mod.STAR, Mod.FUT})
        fam = build_krom_hitting_family(phi)
        assert fam.sets == (frozenset({"x", "y", "z"}),)

    def test_binary_clauses_give_nothing(self):
        phi = formula([Clause([Lit("x"), Lit("y", positive=False)])])
        assert build_krom_hitting_family(phi).sets == ()

    def test_four_literal_clause_gives_all_triples(self):
        phi = formula([Clause([Lit(v) for v in "abcd"])])
        fam = build_krom_hitting_family(phi)
        assert len(fam.sets) == 4
        assert all(len(s) == 3 for s in fam.sets)

    def test_repeated_variable_shrinks_the_set(self):
        phi = formula([Clause([Lit("x"), Lit("x", Mod.STAR), Lit("y")])])
        fam = build_krom_hitting_family(phi)
        assert fam.sets == (frozenset({"x", "y"}),)


class TestCoverAndHitting:
    triangle = ConflictGraph(
        frozenset("abc"),
        frozenset({frozenset({"a", "b"}), frozenset({"b", "c"}),
                   frozenset({"a", "c"})}))

    def test_triangle_bounds(self):
        assert vertex_cover(self.triangle, 1) is None
        got = vertex_cover(self.triangle, 2)
        assert got is not None and len(got) <= 2 and covers(self.triangle, got)

    def test_self_loop_forced(self):
        g = ConflictGraph(frozenset("ab"),
                          frozenset({frozenset({"a"}), frozenset({"a", "b"})}))
        assert vertex_cover(g, 1) == frozenset({"a"})

    def test_hitting_simple(self):
        fam = HittingFamily(frozenset("abcde"),
                            (frozenset("abc"), frozenset("ade")))
        assert hitting_set_3(fam, 1) == frozenset({"a"})

    def test_hitting_two_disjoint_units(self):
        fam = HittingFamily(frozenset("ab"), (frozenset("a"), frozenset("b")))
        assert hitting_set_3(fam, 1) is None

    def test_cover_matches_exhaustive_minimum_on_random_graphs(self):
        rng = random.Random(3)
        for _ in range(60):
            names = [f"v{i}" for i in range(rng.randint(2, 7))]
            edges = set()
            for _ in range(rng.randint(1, 10)):
                pair = rng.sample(names, 2)
                edges.add(frozenset(pair))
            g = ConflictGraph(frozenset(names), frozenset(edges))
            best = next(size for size in range(len(names) + 1)
                        for combo in [None]
                        if any(covers(g, c)
                               for c in itertools.combinations(names, size)))
            for k in range(len(names) + 1):
                got = vertex_cover(g, k)
                assert (got is not None) == (k >= best)
                if got is not None:
                    assert len(got) <= k and covers(g, got)

    def test_hitting_matches_exhaustive_minimum_on_random_families(self):
        rng = random.Random(4)
        for _ in range(60):
            names = [f"v{i}" for i in range(rng.randint(3, 7))]
            sets = tuple(frozenset(rng.sample(names, rng.randint(1, 3)))
                         for _ in range(rng.randint(1, 8)))
            fam = HittingFamily(frozenset(names), sets)
            best = next(size for size in range(len(names) + 1)
                        if any(hits(fam, c)
                               for c in itertools.combinations(names, size)))
            for k in range(len(names) + 1):
                got = hitting_set_3(fam, k)
                assert (got is not None) == (k >= best)
                if got is not None:
                    assert len(got) <= k and hits(fam, got)


class TestVerify:
    def test_empty_set_fails_on_non_horn_clause(self):
        phi = formula([Clause([Lit("x"), Lit("y")])])
        assert not verify_backdoor(phi, (), HORN)

    def test_singleton_backdoors(self):
        phi = formula([Clause([Lit("x"), Lit("y")])])
        assert verify_backdoor(phi, ("x",), HORN)
        assert verify_backdoor(phi, ("y",), HORN)

    def test_unknown_variable_rejected(self):
        phi = formula([Clause([Lit("x")])])
        with pytest.raises(ValueError):
            verify_backdoor(phi, ("nope",), HORN)

    def test_unknown_target_rejected(self):
        phi = formula([Clause([Lit("x")])])
        with pytest.raises(ValueError):
            verify_backdoor(phi, (), "affine")

    def test_fast_path_matches_reference(self):
        rng = random.Random(5)
        op_choices = [{Mod.STAR}, {Mod.FUT, Mod.PAST},
                      {Mod.PAST, Mod.FUT, Mod.STAR}, {Mod.FUT}]
        for _ in range(250):
            phi = random_formula(rng, rng.randint(1, 4), rng.randint(1, 4),
                                 4, rng.choice(op_choices))
            names = sorted(phi.variables)
            for size in range(0, min(3, len(names)) + 1):
                for chosen in itertools.combinations(names, size):
                    for target in (HORN, KROM):
                        assert (verify_backdoor(phi, chosen, target)
                                == verify_backdoor_reference(phi, chosen, target))


class TestDetect:
    def test_horn_zero_budget_on_horn_formula(self):
        phi = formula([Clause([Lit("x", positive=False), Lit("y")])])
        assert detect_horn_backdoor(phi, 0) == frozenset()

    def test_horn_needs_budget(self):
        phi = formula([Clause([Lit("x"), Lit("y")])])
        assert detect_horn_backdoor(phi, 0) is None
        assert detect_horn_backdoor(phi, 1) in (frozenset({"x"}),
                                                frozenset({"y"}))

    def test_krom_zero_budget(self):
        phi = formula([Clause([Lit("x"), Lit("y"), Lit("z")])])
        assert detect_krom_backdoor(phi, 0) is None
        got = detect_krom_backdoor(phi, 1)
        assert got is not None and len(got) == 1

    def test_detected_sets_verify_against_the_core(self):
        rng = random.Random(6)
        for _ in range(150):
            phi = random_formula(rng, rng.randint(1, 5), rng.randint(1, 5),
                                 4, {Mod.STAR, Mod.FUT, Mod.PAST},
                                 seed_tautologies=rng.random() < 0.4)
            core = remove_tautologies(phi)
            for k in range(0, 4):
                for target, detect in ((HORN, detect_horn_backdoor),
                                       (KROM, detect_krom_backdoor)):
                    got = detect(phi, k)
                    if got is not None:
                        assert len(got) <= k
                        assert verify_backdoor(core, got, target)


class TestMinimalBruteforce:
    def test_horn_formula_needs_nothing(self):
        phi = formula([Clause([Lit("x", positive=False), Lit("y")])])
        assert minimal_backdoor_bruteforce(phi, HORN) == frozenset()

    def test_lexicographic_tie_break(self):
        phi = formula([Clause([Lit("x"), Lit("y")])])
        assert minimal_backdoor_bruteforce(phi, HORN) == frozenset({"x"})

    def test_budget(self):
        phi = formula([Clause([Lit(f"v{i:02d}")]) for i in range(13)])
        with pytest.raises(ValueError):
            minimal_backdoor_bruteforce(phi, HORN)

    def test_detect_agrees_with_bruteforce_size(self):
        rng = random.Random(7)
        for _ in range(80):
            phi = random_formula(rng, rng.randint(1, 5), rng.randint(1, 5),
                                 4, {Mod.STAR})
            core = remove_tautologies(phi)
            for target, detect in ((HORN, detect_horn_backdoor),
                                   (KROM, detect_krom_backdoor)):
                best = len(minimal_backdoor_bruteforce(core, target))
                for k in range(0, best + 2):
                    assert (detect(phi, k) is not None) == (k >= best)
