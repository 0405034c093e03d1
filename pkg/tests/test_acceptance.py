"""Acceptance criteria 1-10, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""

import itertools
import json
import math
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from rainbowbench.capacity import CapacityQuery, capacity_bell, capacity_unitary, min_rounds_for_target
from rainbowbench.families import complete, grid, hierarchical_product, hierarchy, path, star
from rainbowbench.flow import build_flow_network, max_flow
from rainbowbench.graph import dump_graph, t_ratio
from rainbowbench.hierarchy import hierarchy_rainbow_time, hp_rainbow_time, kn_hierarchy_rainbow_time
from rainbowbench.isoperimetric import rainbow_time_exact
from rainbowbench.protocol import default_k, run_protocol, simulate_trace, verify_trace

from oracles import brute_min_cut, brute_tau, brute_u, graph_matrix, random_connected_graph

RANDOM_F_PER_GRAPH = 20


def exact_tau(g):
    # unpruned enumeration over every subset up to half size
    return rainbow_time_exact(g, max_n=max(g.n, 24), with_spectral=False).tau


def slope(sizes, taus):
    return float(np.polyfit(np.log(sizes), np.log([float(t) for t in taus]), 1)[0])


@pytest.fixture(scope="module")
def matrix():
    return graph_matrix()


@pytest.fixture(scope="module")
def protocol_runs(matrix):
    """Every (graph, F, K, trace) in the protocol matrix: witness F plus random F."""
    rng = random.Random(2024)
    runs = []
    for name, g in matrix.items():
        rep = rainbow_time_exact(g, prune_connected=True, with_spectral=False)
        cases = [(list(rep.witness), list(default_k(g, rep.witness)))]
        for _ in range(RANDOM_F_PER_GRAPH):
            size = rng.randint(1, g.n // 2)
            verts = rng.sample(range(g.n), 2 * size)
            cases.append((sorted(verts[:size]), sorted(verts[size:])))
        for f, k in cases:
            runs.append((name, g, rep.tau, f, k, run_protocol(g, f, k)))
    return runs


def test_criterion_1_exact_rainbow_times():
    cases = [(complete(4), Fraction(1, 2)), (complete(6), Fraction(1, 3)), (star(6), Fraction(1)),
             (grid([4, 4]), Fraction(2))]
    cases += [(path(n), Fraction(n // 2)) for n in (4, 6, 8, 10)]
    for g, expected in cases:
        assert exact_tau(g) == expected
        assert brute_tau(g) == expected


def test_criterion_2_scaling_slopes(acceptance_note):
    ks = list(range(4, 13))
    stars = list(range(4, 13))
    paths = list(range(4, 17, 2))
    sides = [2, 3, 4, 5]
    fits = {
        "K": slope(ks, [exact_tau(complete(n)) for n in ks]),
        "S": slope(stars, [exact_tau(star(n)) for n in stars]),
        "P": slope(paths, [exact_tau(path(n)) for n in paths]),
        "grid": slope([s * s for s in sides], [exact_tau(grid([s, s])) for s in sides]),
    }
    acceptance_note(", ".join(f"{k} {v:+.3f}" for k, v in fits.items()))
    assert abs(fits["K"] + 1) <= 0.1
    assert abs(fits["S"]) <= 0.05
    assert abs(fits["P"] - 1) <= 0.05
    assert abs(fits["grid"] - 0.5) <= 0.1


def test_criterion_3_hierarchy_formulas(acceptance_note):
    bases = {"K_2": complete(2), "K_3": complete(3), "P_2": path(2), "P_3": path(3), "S_4": star(4),
             "K_4": complete(4)}
    base_vals = {name: (brute_tau(g), brute_u(g, 0)) for name, g in bases.items()}
    alphas = [Fraction(1, 2), 1, 2, 3, [1, 3], [2, 1], [1, 2, 5]]
    checked = 0
    for name, g in bases.items():
        tau_g, u_g = base_vals[name]
        for k in (1, 2, 3, 4):
            if g.n ** k > 20:
                continue
            for a in alphas:
                if isinstance(a, list) and len(a) != k:
                    continue
                h = hierarchy(g, k, a)
                ev = hierarchy_rainbow_time(tau_g, u_g, g.n, k, a, base=g)
                assert ev.tau_closed_form == exact_tau(h), (name, k, a)
                if name.startswith("K_") and g.n % 2 == 0 and k >= 2 and not isinstance(a, list):
                    assert kn_hierarchy_rainbow_time(g.n, k, a).tau_closed_form == ev.tau_closed_form
                checked += 1
    for (n1, h1), (n2, h2) in itertools.product(bases.items(), repeat=2):
        if h1.n * h2.n > 20:
            continue
        prod = hierarchical_product(h1, h2)
        assert hp_rainbow_time(base_vals[n1][0], base_vals[n2][1], h2.n) == exact_tau(prod), (n1, n2)
        checked += 1
    assert kn_hierarchy_rainbow_time(4, 2, 1).tau_closed_form == 2 == exact_tau(hierarchy(complete(4), 2, 1))
    assert kn_hierarchy_rainbow_time(4, 2, 2).tau_closed_form == 1 == exact_tau(hierarchy(complete(4), 2, 2))
    acceptance_note(f"{checked} instances")


def test_criterion_4_spectral_sandwich(matrix, acceptance_note):
    rng = random.Random(99)
    graphs = list(matrix.values())
    graphs += [random_connected_graph(rng, rng.randint(2, 16), 0.3, fractional=True) for _ in range(20)]
    graphs = [g for g in graphs if g.n <= 16]
    assert len(graphs) >= 40
    for g in graphs:
        r = rainbow_time_exact(g, prune_connected=True)
        assert r.spectral_lower - 1e-9 <= float(r.tau) <= r.spectral_upper + 1e-9
    acceptance_note(f"{len(graphs)} graphs")


def test_criterion_5_maxflow_mincut():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 12)
        g = random_connected_graph(rng, n, rng.choice([0.15, 0.3, 0.5]), wmax=3)
        size = rng.randint(1, n // 2)
        verts = rng.sample(range(n), 2 * size)
        net = build_flow_network(g, verts[:size], verts[size:])
        assert max_flow(net).value == brute_min_cut(net)


def test_criterion_6_per_round_flow(protocol_runs, acceptance_note):
    for name, g, tau, f, k, trace in protocol_runs:
        m = min(Fraction(1), 1 / tau)
        for rnd in trace.rounds:
            assert rnd.value >= math.ceil(m * len(rnd.F)), (name, f)
    acceptance_note(f"{len(protocol_runs)} (graph, F) pairs")


def test_criterion_7_round_bound(protocol_runs, acceptance_note):
    within = 0
    for name, g, tau, f, k, trace in protocol_runs:
        bound = max(1, math.ceil(float(tau) * math.log(len(f))))
        assert len(trace.rounds) <= bound, (name, f)
        within += len(trace.rounds) <= max(1, math.ceil(tau))
    acceptance_note(f"within ceil(tau): {within / len(protocol_runs):.3f}")


def test_criterion_8_trace_validity(protocol_runs):
    for name, g, tau, f, k, trace in protocol_runs:
        state = simulate_trace(g, trace)
        assert state.is_involution()
        partners = {v: state.partner[v] for v in f}
        assert set(partners.values()) == set(k), (name, f)
        assert all(state.partner[v] is None for v in range(g.n) if v not in f and v not in k)


def test_criterion_9_capacity_relations(matrix, protocol_runs):
    for g in matrix.values():
        if g.n > 10:
            continue
        for mask in range(1, (1 << g.n) - 1):
            f = frozenset(v for v in range(g.n) if mask >> v & 1)
            assert capacity_unitary(CapacityQuery(g, f, "unitary", 1)) == \
                2 * capacity_bell(CapacityQuery(g, f, "bell", 1))
    for name, g, tau, f, k, trace in protocol_runs:
        rep = verify_trace(g, f, k, trace, tau)
        assert rep.checks["capacity"], (name, f)
        assert rep.passed, (name, f, rep.checks)
        one_round = capacity_bell(CapacityQuery(g, frozenset(f), "bell", 1))
        assert max(rep.details["crossing_per_round"]) <= one_round
        assert min_rounds_for_target(g, f, len(f), "bell") == math.ceil(t_ratio(g, f))


def test_criterion_10_determinism(tmp_path):
    target = tmp_path / "g.json"
    dump_graph(random_connected_graph(random.Random(3), 12, 0.3), target)
    commands = [["rainbow", str(target)], ["rainbow", str(target), "--no-prune"],
                ["protocol", str(target), "--f", "0,3,5,7", "--verify"],
                ["urainbow", str(target), "--root", "2"]]
    for cmd in commands:
        outs = [subprocess.run([sys.executable, "-m", "rainbowbench", *cmd],
                               capture_output=True, check=True).stdout for _ in range(2)]
        assert outs[0] == outs[1]
        json.loads(outs[0])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
