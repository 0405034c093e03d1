import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowbench.errors import TooLarge
from rainbowbench.families import complete, cycle, grid, path, star
from rainbowbench.graph import laplacian, lambda2, t_ratio
from rainbowbench.isoperimetric import (
    best_ratio_mask,
    isoperimetric_number,
    rainbow_time_exact,
    rainbow_time_spectral,
    rounds_required,
    spectral_bounds,
    unrestricted_rainbow_time,
)

from oracles import brute_tau, brute_u, random_connected_graph


def test_k4_exact():
    r = rainbow_time_exact(complete(4))
    assert r.tau == Fraction(1, 2)
    assert r.witness == (0, 1)
    assert r.method == "exact"
    assert r.rounds_required == 1


def test_p8_exact():
    r = rainbow_time_exact(path(8))
    assert r.tau == 4
    assert r.witness == (0, 1, 2, 3)
    assert r.rounds_required == 4


def test_star6_exact():
    assert rainbow_time_exact(star(6)).tau == 1


@pytest.mark.parametrize("g,root,tau,witness", [
    (complete(4), 0, Fraction(1), (1, 2, 3)),
    (path(3), 0, Fraction(2), (1, 2)),
    (complete(2), 0, Fraction(1), (1,)),
])
def test_unrestricted(g, root, tau, witness):
    r = unrestricted_rainbow_time(g, root)
    assert r.tau == tau
    assert r.witness == witness


def test_unrestricted_root_matters():
    g = path(4)
    assert unrestricted_rainbow_time(g, 0).tau == 3
    assert unrestricted_rainbow_time(g, 1).tau == 2
    with pytest.raises(ValueError):
        unrestricted_rainbow_time(g, 4)


def test_rounds_required():
    assert rounds_required(Fraction(1, 2)) == 1
    assert rounds_required(4) == 4
    assert rounds_required(0) == 1
    assert rounds_required(Fraction(7, 3)) == 3


def test_spectral_bounds_k2_clamped():
    lower, upper = spectral_bounds(complete(2))
    assert lower == 1.0
    assert upper == pytest.approx(1.0)


def test_spectral_upper_tight_on_k4():
    lower, upper = spectral_bounds(complete(4))
    assert upper == pytest.approx(0.5, abs=1e-12)
    assert lower <= 0.5


def test_spectral_p8():
    lam = 2 * (1 - math.cos(math.pi / 8))
    assert lambda2(laplacian(path(8))) == pytest.approx(lam, abs=1e-10)
    lower, upper = spectral_bounds(path(8))
    assert upper == pytest.approx(2 / lam)
    assert lower <= 4 <= upper


def test_spectral_only_report():
    r = rainbow_time_spectral(cycle(6))
    assert r.tau is None and r.method == "spectral-only"
    assert r.spectral_lower <= 1.5 <= r.spectral_upper


def test_witness_ratio_and_size():
    for g in (grid([3, 4]), cycle(7), star(9), path(11)):
        r = rainbow_time_exact(g)
        assert len(r.witness) <= g.n // 2
        assert t_ratio(g, r.witness) == r.tau


def test_lexicographic_witness_over_ties():
    # every 3-subset of K_6 ties; the smallest mask is {0, 1, 2}
    assert rainbow_time_exact(complete(6)).witness == (0, 1, 2)
    # in C_6 any 3 consecutive vertices tie; {0,1,2} is again the smallest mask
    assert rainbow_time_exact(cycle(6)).witness == (0, 1, 2)


def test_size_cap():
    with pytest.raises(TooLarge):
        rainbow_time_exact(path(25))
    assert rainbow_time_exact(path(25), max_n=25, with_spectral=False).tau == 12
    with pytest.raises(TooLarge):
        rainbow_time_exact(path(65), max_n=100)


def test_block_enumeration_beyond_one_block(monkeypatch):
    import rainbowbench.isoperimetric as iso
    monkeypatch.setattr(iso, "BLOCK_BITS", 4)
    rng = random.Random(11)
    for n in (6, 9, 11):
        g = random_connected_graph(rng, n, 0.4, fractional=True)
        tau, mask = best_ratio_mask(g, n // 2)
        monkeypatch.setattr(iso, "BLOCK_BITS", 18)
        assert (tau, mask) == best_ratio_mask(g, n // 2)
        monkeypatch.setattr(iso, "BLOCK_BITS", 4)
        assert tau == brute_tau(g)
        u, _ = best_ratio_mask(g, n - 1, forbid=1 << (n - 1))
        assert u == brute_u(g, n - 1)


@pytest.mark.parametrize("seed", range(60))
def test_pruned_matches_unpruned(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 12)
    g = random_connected_graph(rng, n, rng.choice([0.1, 0.3, 0.6]), fractional=seed % 2 == 0)
    full = rainbow_time_exact(g, with_spectral=False)
    pruned = rainbow_time_exact(g, prune_connected=True, with_spectral=False)
    assert full.tau == pruned.tau
    assert t_ratio(g, pruned.witness) == pruned.tau


@given(st.integers(2, 10), st.integers(0, 10**6), st.booleans())
@settings(max_examples=60, deadline=None)
def test_tau_is_inverse_isoperimetric_number(n, seed, fractional):
    g = random_connected_graph(random.Random(seed), n, 0.4, fractional=fractional)
    tau = rainbow_time_exact(g, with_spectral=False).tau
    assert tau == brute_tau(g)
    assert isoperimetric_number(g) == 1 / tau


@given(st.integers(2, 9), st.integers(0, 10**6),
       st.fractions(min_value=Fraction(1, 7), max_value=7, max_denominator=9))
@settings(max_examples=40, deadline=None)
def test_scaling_weights_divides_tau(n, seed, c):
    g = random_connected_graph(random.Random(seed), n, 0.5)
    assert rainbow_time_exact(g.scaled(c), with_spectral=False).tau == rainbow_time_exact(g, with_spectral=False).tau / c


@given(st.integers(3, 10), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_unrestricted_dominates_when_root_excluded(n, seed):
    g = random_connected_graph(random.Random(seed), n, 0.4)
    r = rainbow_time_exact(g, with_spectral=False)
    for root in range(n):
        if root not in r.witness:
            assert unrestricted_rainbow_time(g, root).tau >= r.tau
    assert unrestricted_rainbow_time(g, 0).tau == brute_u(g, 0)


@given(st.integers(2, 16), st.integers(0, 10**6), st.booleans())
@settings(max_examples=40, deadline=None)
def test_spectral_sandwich_random(n, seed, fractional):
    g = random_connected_graph(random.Random(seed), n, 0.3, fractional=fractional)
    r = rainbow_time_exact(g, prune_connected=True)
    assert r.spectral_lower - 1e-9 <= float(r.tau) <= r.spectral_upper + 1e-9


def test_report_json_fields():
    d = rainbow_time_exact(complete(4)).to_dict()
    assert set(d) == {"tau", "witness", "spectral_lower", "spectral_upper", "rounds_required", "method"}
    assert d["tau"] == "1/2" and d["witness"] == [0, 1]
