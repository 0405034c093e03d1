"""Multi-round rainbow-state construction by repeated max-flow.

Each round routes as many unit paths as possible from the still-unpaired
part of ``F`` to the still-unpaired part of ``K``; every path becomes one
long-range Bell pair after entanglement swapping at its internal nodes.
Entanglement is tracked as a ledger of pairs, never as quantum states.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import CapacityViolation, RainbowError, SwapError
from .flow import build_flow_network, decompose_paths, max_flow
from .graph import Graph, boundary_weight, fraction_str


@dataclass(frozen=True)
class Round:
    F: tuple[int, ...]
    K: tuple[int, ...]
    value: int
    paths: tuple[tuple[int, ...], ...]

    @property
    def edge_usage(self) -> dict[tuple[int, int], int]:
        usage: dict[tuple[int, int], int] = {}
        for p in self.paths:
            for a, b in zip(p, p[1:]):
                e = (a, b) if a < b else (b, a)
                usage[e] = usage.get(e, 0) + 1
        return dict(sorted(usage.items()))

    def to_dict(self) -> dict:
        return {
            "F": list(self.F),
            "K": list(self.K),
            "value": self.value,
            "paths": [list(p) for p in self.paths],
            "edge_usage": [[u, v, c] for (u, v), c in self.edge_usage.items()],
        }


@dataclass(frozen=True)
class ProtocolTrace:
    rounds: tuple[Round, ...]

    def to_dict(self) -> dict:
        return {"rounds": [r.to_dict() for r in self.rounds]}

    @classmethod
    def from_dict(cls, data: dict) -> "ProtocolTrace":
        return cls(tuple(
            Round(tuple(r["F"]), tuple(r["K"]), int(r["value"]), tuple(tuple(p) for p in r["paths"]))
            for r in data["rounds"]))


@dataclass
class PairingState:
    partner: dict[int, Optional[int]]
    history: list[tuple] = field(default_factory=list)

    def is_involution(self) -> bool:
        return all(p is None or self.partner.get(p) == x for x, p in self.partner.items())

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((x, p) for x, p in self.partner.items() if p is not None and x < p)


def default_k(g: Graph, f: Iterable[int]) -> tuple[int, ...]:
    """The ``|F|`` lowest-id vertices outside ``F``."""
    fs = set(f)
    rest = [v for v in range(g.n) if v not in fs]
    return tuple(rest[:len(fs)])


def run_protocol(g: Graph, f: Iterable[int], k: Optional[Iterable[int]] = None) -> ProtocolTrace:
    """Pair every vertex of ``f`` with a distinct vertex of ``k``, round by round.

    A round builds the flow network on the unpaired remainder, takes a
    maximum integral flow, and retires the endpoints of every path found.
    """
    f = tuple(sorted(set(f)))
    k = default_k(g, f) if k is None else tuple(sorted(set(k)))
    build_flow_network(g, f, k)  # validates the partition once up front
    active_f, active_k = list(f), list(k)
    rounds = []
    while active_f:
        net = build_flow_network(g, active_f, active_k)
        fr = max_flow(net)
        if fr.value == 0:
            raise RainbowError("no augmenting path between F and K; graph must be connected")
        paths = decompose_paths(net, fr)
        rounds.append(Round(tuple(active_f), tuple(active_k), fr.value, tuple(tuple(p) for p in paths)))
        done_f = {p[0] for p in paths}
        done_k = {p[-1] for p in paths}
        active_f = [x for x in active_f if x not in done_f]
        active_k = [x for x in active_k if x not in done_k]
    return ProtocolTrace(tuple(rounds))


def simulate_trace(g: Graph, trace: ProtocolTrace, rng: Optional[random.Random] = None) -> PairingState:
    """Replay a trace as Bell-pair generation followed by entanglement swaps.

    Every edge of a path spends one unit of that edge's per-round budget.
    Swaps run left to right along each path unless ``rng`` is given, in
    which case the internal nodes are swapped in shuffled order.
    """
    state = PairingState({v: None for v in range(g.n)})
    for rnd, r in enumerate(trace.rounds):
        budget = {(u, v): w for u, v, w in g.edges}
        for idx, p in enumerate(r.paths):
            if len(p) < 2:
                raise SwapError(f"round {rnd} path {idx} has no edge")
            links: dict[int, list[int]] = {}
            for a, b in zip(p, p[1:]):
                e = (a, b) if a < b else (b, a)
                if e not in budget:
                    raise CapacityViolation(f"round {rnd}: ({a}, {b}) is not an edge")
                budget[e] -= 1
                if budget[e] < 0:
                    raise CapacityViolation(f"round {rnd}: edge {e} used beyond its weight")
                links.setdefault(a, []).append(b)
                links.setdefault(b, []).append(a)
                state.history.append((rnd, idx, "generate", a, b))
            order = list(p[1:-1])
            if rng is not None:
                rng.shuffle(order)
            for x in order:
                ends = links.get(x, [])
                if len(ends) < 2:
                    raise SwapError(f"round {rnd}: node {x} holds {len(ends)} pair ends, needs two")
                a, b = ends.pop(0), ends.pop(0)
                links[a].remove(x)
                links[b].remove(x)
                links[a].append(b)
                links[b].append(a)
                state.history.append((rnd, idx, "swap", x, a, b))
            head, tail = p[0], p[-1]
            if links.get(head) != [tail] or links.get(tail) != [head]:
                raise SwapError(f"round {rnd} path {idx} did not end in a single pair")
            if state.partner[head] is not None or state.partner[tail] is not None:
                raise SwapError(f"round {rnd}: endpoint of path {idx} is already paired")
            state.partner[head] = tail
            state.partner[tail] = head
    return state


@dataclass(frozen=True)
class VerificationReport:
    checks: dict[str, bool]
    details: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": dict(self.checks), "details": self.details}


def round_bound(tau, f_size: int) -> int:
    """``max(1, ceil(tau * ln |F|))`` rounds always suffice."""
    if f_size <= 1:
        return 1
    return max(1, math.ceil(float(tau) * math.log(f_size)))


def verify_trace(g: Graph, f: Iterable[int], k: Iterable[int], trace: ProtocolTrace, tau) -> VerificationReport:
    """Check a trace against the per-round flow guarantee and the round bound.

    ``per_round_flow``: each round's value is at least ``ceil(m |F_n|)``
    with ``m = min(1, 1/tau)``. ``round_bound``: no more than
    ``max(1, ceil(tau ln|F|))`` rounds. ``perfect_matching``: the replayed
    pairing matches ``F`` onto ``K``. ``capacity``: Bell pairs generated
    across ``(F, F̄)`` in one round never exceed ``|dF|``.
    """
    f = tuple(sorted(set(f)))
    k = tuple(sorted(set(k)))
    tau = Fraction(tau)
    m = min(Fraction(1), 1 / tau) if tau > 0 else Fraction(1)
    fset = set(f)

    required = [math.ceil(m * len(r.F)) for r in trace.rounds]
    per_round = all(r.value >= need for r, need in zip(trace.rounds, required))

    bound = round_bound(tau, len(f))
    observed = len(trace.rounds)

    paths_ok = True
    for r in trace.rounds:
        heads = [p[0] for p in r.paths if p]
        tails = [p[-1] for p in r.paths if p]
        if (len(r.paths) != r.value or len(set(heads)) != len(heads) or len(set(tails)) != len(tails)
                or not set(heads) <= set(r.F) or not set(tails) <= set(r.K)):
            paths_ok = False

    matching_ok = False
    matching_error = None
    try:
        state = simulate_trace(g, trace)
        matched = {x: state.partner[x] for x in f}
        matching_ok = (state.is_involution()
                       and all(p is not None and p in set(k) for p in matched.values())
                       and len(set(matched.values())) == len(f)
                       and len(state.pairs()) == len(f))
    except (CapacityViolation, SwapError) as exc:
        matching_error = str(exc)

    cut = boundary_weight(g, f) if 0 < len(f) < g.n else Fraction(0)
    crossing = []
    for r in trace.rounds:
        count = 0
        for p in r.paths:
            count += sum(1 for a, b in zip(p, p[1:]) if (a in fset) != (b in fset))
        crossing.append(count)
    capacity_ok = all(c <= cut for c in crossing)

    checks = {
        "per_round_flow": per_round,
        "round_bound": observed <= bound,
        "perfect_matching": matching_ok,
        "capacity": capacity_ok,
        "paths_valid": paths_ok,
    }
    details = {
        "tau": fraction_str(tau),
        "m": fraction_str(m),
        "required_per_round": required,
        "values": [r.value for r in trace.rounds],
        "observed_rounds": observed,
        "round_bound": bound,
        "ceil_tau": max(1, math.ceil(tau)),
        "within_ceil_tau": observed <= max(1, math.ceil(tau)),
        "crossing_per_round": crossing,
        "boundary": fraction_str(cut),
    }
    if matching_error is not None:
        details["matching_error"] = matching_error
    return VerificationReport(checks, details)
