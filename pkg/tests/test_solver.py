"""Both solver strategies against brute force, plus the determinism contract."""

import json
import random
from itertools import combinations

import pytest

from prismcode.graphs import (
    Graph,
    complementary_prism,
    cycle,
    random_graph,
)
from prismcode.idcode import greedy_code, hitting_instance, is_identifying_code
from prismcode.solver import (
    CAP_EXCEEDED,
    INFEASIBLE,
    OPTIMAL,
    SolverOptions,
    SolverResult,
    format_hitting_instance,
    ic_table,
    solve_min_idcode,
)

import bruteforce as bf


def path_graph(n):
    return Graph.from_edges(n, [(u, u + 1) for u in range(n - 1)])


EXH = SolverOptions(strategy="exhaustive")
BNB = SolverOptions(strategy="bnb")


def test_k2_infeasible():
    g = Graph.from_edges(2, [(0, 1)])
    res = solve_min_idcode(g, 1, BNB)
    assert res.status == INFEASIBLE and res.witness == (0, 1)
    assert res.size is None and res.code is None


def test_prism_c6_d2_infeasible_witness_is_first_twin():
    g = complementary_prism(cycle(6))
    res = solve_min_idcode(g, 2, EXH)
    assert res.status == INFEASIBLE
    assert res.witness == (6, 7)
    assert res.witness in bf.twins(bf.to_adj(g), 2)


def test_prism_c9_frozen_optimum():
    g = complementary_prism(cycle(9))
    res = solve_min_idcode(g, 1, BNB)
    assert res.status == OPTIMAL
    assert res.size == 7
    assert res.code == (0, 1, 2, 5, 13, 14, 16)
    assert is_identifying_code(g, 1, res.code).valid
    # optimality is strict: every 6-subset of the code's closure fails? cheap check:
    for drop in res.code:
        rest = [v for v in res.code if v != drop]
        assert not is_identifying_code(g, 1, rest).valid


IC_VALUES = {3: 4, 4: 4, 5: 4, 6: 5, 7: 6, 8: 6, 9: 7, 10: 8, 11: 8, 12: 10}


@pytest.mark.parametrize("n", sorted(IC_VALUES))
def test_prism_optima_frozen(n):
    g = complementary_prism(cycle(n))
    res = solve_min_idcode(g, 1, BNB)
    assert res.status == OPTIMAL and res.size == IC_VALUES[n]
    assert is_identifying_code(g, 1, res.code).valid


def test_strategies_agree_on_corpus():
    rng = random.Random(6)
    corpus = [cycle(n) for n in range(3, 9)]
    corpus += [path_graph(n) for n in (2, 4, 6)]
    corpus += [complementary_prism(cycle(n)) for n in (3, 4, 5, 6)]
    corpus += [random_graph(rng.randint(2, 8), rng) for _ in range(8)]
    for g in corpus:
        for d in (1, 2):
            a = solve_min_idcode(g, d, EXH)
            b = solve_min_idcode(g, d, BNB)
            assert (a.status, a.size, a.code, a.witness) == (b.status, b.size, b.code, b.witness)


def test_optimum_matches_bruteforce():
    rng = random.Random(31)
    corpus = [cycle(4), cycle(7), path_graph(5)]
    corpus += [random_graph(rng.randint(2, 7), rng) for _ in range(6)]
    for g in corpus:
        for d in (1, 2):
            size, codes = bf.min_codes(bf.to_adj(g), d)
            res = solve_min_idcode(g, d, EXH)
            if size is None:
                assert res.status == INFEASIBLE
            else:
                assert res.status == OPTIMAL and res.size == size
                assert res.code == min(codes)  # lexicographically smallest optimum


def test_lexmin_reconstruction_equals_enumeration():
    g = complementary_prism(cycle(5))
    res = solve_min_idcode(g, 1, BNB)
    best = [
        c for c in combinations(range(g.order), res.size)
        if is_identifying_code(g, 1, c).valid
    ]
    assert res.code == min(best)


def test_worker_counts_identical():
    g = complementary_prism(cycle(8))
    runs = [
        solve_min_idcode(g, 1, SolverOptions(strategy="bnb", workers=w))
        for w in (1, 2, 3)
    ]
    assert len({(r.status, r.size, r.code, r.nodes) for r in runs}) == 1


def test_repeat_runs_identical_payload():
    g = complementary_prism(cycle(7))
    a = solve_min_idcode(g, 1, BNB)
    b = solve_min_idcode(g, 1, BNB)
    assert (a.status, a.size, a.code, a.witness, a.nodes) == (b.status, b.size, b.code, b.witness, b.nodes)


def test_size_cap_semantics():
    g = complementary_prism(cycle(9))
    for strat in ("exhaustive", "bnb"):
        below = solve_min_idcode(g, 1, SolverOptions(strategy=strat, size_cap=6))
        assert below.status == CAP_EXCEEDED
        assert below.size is None and below.code is None
        at = solve_min_idcode(g, 1, SolverOptions(strategy=strat, size_cap=7))
        assert at.status == OPTIMAL and at.size == 7
        assert at.code == (0, 1, 2, 5, 13, 14, 16)
    zero = solve_min_idcode(cycle(4), 1, SolverOptions(size_cap=0))
    assert zero.status == CAP_EXCEEDED


def test_bnb_never_beats_greedy_start():
    for n in (5, 6, 7, 8, 9):
        g = complementary_prism(cycle(n))
        inst = hitting_instance(g, 1)
        res = solve_min_idcode(g, 1, BNB)
        assert res.size <= len(greedy_code(inst))


def test_options_validation():
    with pytest.raises(ValueError):
        SolverOptions(strategy="magic")
    with pytest.raises(ValueError):
        SolverOptions(size_cap=-1)
    with pytest.raises(ValueError):
        SolverOptions(workers=0)


def test_result_json_shapes():
    g = complementary_prism(cycle(9))
    res = solve_min_idcode(g, 1, BNB)
    payload = json.loads(res.to_json())
    assert payload["status"] == "optimal" and payload["size"] == 7
    assert payload["code"] == [1, 2, 3, 6, 14, 15, 17]  # plain 1-based without indexing
    assert set(payload) == {"status", "size", "code", "nodes", "ms"}
    infeasible = solve_min_idcode(complementary_prism(cycle(6)), 2, BNB)
    bad = json.loads(infeasible.to_json())
    assert bad["status"] == "infeasible" and bad["witness"] == [7, 8]
    capped = json.loads(solve_min_idcode(g, 1, SolverOptions(size_cap=3)).to_json())
    assert capped["status"] == "cap-exceeded" and "code" not in capped


def test_ic_table_rows():
    rows = ic_table([3, 9], 1, BNB)
    assert rows[0].n == 3 and rows[0].status == OPTIMAL and rows[0].size == 4
    assert rows[0].lower is None and rows[0].upper is None
    nine = rows[1]
    assert nine.size == 7 and nine.lower == -5 and nine.upper == 7 and nine.pattern_size == 7
    infeasible = ic_table(range(6, 10), 2, BNB)
    assert all(r.status == INFEASIBLE and r.witness is not None for r in infeasible)


def test_hitting_export_golden():
    text = format_hitting_instance(hitting_instance(path_graph(3), 1))
    assert text == "h 3 6\n1 2\n1 2 3\n2 3\n3\n1 3\n1\n"
    twins = format_hitting_instance(hitting_instance(cycle(3), 1))
    assert twins == "c twin 1 2\nc twin 1 3\nc twin 2 3\nh 3 1\n1 2 3\n"


def test_pure_python_scan_agrees_with_numpy():
    from prismcode.solver import _scan_size_numpy, _scan_size_pure

    inst = hitting_instance(complementary_prism(cycle(5)), 1)
    constraints = sorted(inst.constraints, key=lambda c: c.bit_count())
    for k in (2, 3, 4):
        np_hit, np_tested = _scan_size_numpy(constraints, inst.universe, k)
        py_hit, py_tested = _scan_size_pure(constraints, inst.universe, k)
        assert np_tested == py_tested
        assert (tuple(np_hit) if np_hit is not None else None) == py_hit
