"""Integral max-flow between vertex sets and its decomposition into paths.

Graph vertices keep their ids; the fictitious source is ``n`` and the
sink ``n + 1``. Every undirected edge of weight ``w`` becomes two arcs of
capacity ``w``. Source and sink arcs have capacity one, so each unit of
flow pairs one vertex of ``F`` with one vertex of ``K``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadPartition, NonIntegerWeights, TooLarge
from .graph import Graph

MIN_CUT_MAX_NODES = 22


@dataclass(frozen=True)
class FlowNetwork:
    num_nodes: int
    source: int
    sink: int
    arcs: tuple[tuple[int, int, int], ...]
    sources: tuple[int, ...] = ()
    sinks: tuple[int, ...] = ()

    @property
    def graph_nodes(self) -> int:
        return self.num_nodes - 2


@dataclass(frozen=True)
class FlowResult:
    value: int
    flow: dict  # (u, v) -> units on that arc

    def conservation_residuals(self, net: FlowNetwork) -> list[int]:
        excess = [0] * net.num_nodes
        for (u, v), x in self.flow.items():
            excess[u] -= x
            excess[v] += x
        return [excess[x] for x in range(net.num_nodes) if x not in (net.source, net.sink)]


def build_flow_network(g: Graph, f: Iterable[int], k: Iterable[int]) -> FlowNetwork:
    """Flow network that routes entanglement from ``f`` to ``k`` over ``g``.

    Raises :class:`NonIntegerWeights` unless every weight is an integer and
    :class:`BadPartition` unless ``f`` and ``k`` are disjoint, equal-sized
    and no larger than half the graph.
    """
    if not g.has_integer_weights():
        raise NonIntegerWeights("flow routing needs integer edge weights")
    f = sorted(set(f))
    k = sorted(set(k))
    for v in f + k:
        if not 0 <= v < g.n:
            raise BadPartition(f"vertex {v} is outside 0..{g.n - 1}")
    if len(f) != len(k):
        raise BadPartition(f"|F|={len(f)} differs from |K|={len(k)}")
    if set(f) & set(k):
        raise BadPartition(f"F and K overlap on {sorted(set(f) & set(k))}")
    if len(f) > g.n // 2:
        raise BadPartition(f"|F|={len(f)} exceeds half of {g.n} vertices")
    s, t = g.n, g.n + 1
    arcs = []
    for u, v, w in g.edges:
        arcs.append((u, v, int(w)))
        arcs.append((v, u, int(w)))
    arcs.sort()
    arcs.extend((s, x, 1) for x in f)
    arcs.extend((x, t, 1) for x in k)
    return FlowNetwork(g.n + 2, s, t, tuple(arcs), tuple(f), tuple(k))


def _residual(net: FlowNetwork):
    cap: dict[tuple[int, int], int] = {}
    nbrs: list[set[int]] = [set() for _ in range(net.num_nodes)]
    for u, v, c in net.arcs:
        cap[(u, v)] = cap.get((u, v), 0) + c
        nbrs[u].add(v)
        nbrs[v].add(u)
    return cap, [sorted(x) for x in nbrs]


def max_flow(net: FlowNetwork) -> FlowResult:
    """Edmonds-Karp: breadth-first shortest augmenting paths, lowest id first."""
    cap, nbrs = _residual(net)
    net_flow: dict[tuple[int, int], int] = {}
    s, t = net.source, net.sink
    value = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y in nbrs[x]:
                if y not in parent and cap.get((x, y), 0) - net_flow.get((x, y), 0) > 0:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        bottleneck = None
        y = t
        while parent[y] is not None:
            x = parent[y]
            room = cap.get((x, y), 0) - net_flow.get((x, y), 0)
            bottleneck = room if bottleneck is None else min(bottleneck, room)
            y = x
        y = t
        while parent[y] is not None:
            x = parent[y]
            net_flow[(x, y)] = net_flow.get((x, y), 0) + bottleneck
            net_flow[(y, x)] = net_flow.get((y, x), 0) - bottleneck
            y = x
        value += bottleneck
    flow = {}
    for u, v, _ in net.arcs:
        flow[(u, v)] = max(0, net_flow.get((u, v), 0))
    return FlowResult(value, flow)


def min_cut_bruteforce(net: FlowNetwork) -> int:
    """Smallest s-t cut capacity by enumerating every side assignment."""
    n = net.graph_nodes
    if net.num_nodes > MIN_CUT_MAX_NODES:
        raise TooLarge(f"brute-force min cut is limited to {MIN_CUT_MAX_NODES} nodes")
    masks = np.arange(1 << n, dtype=np.int64)
    on_source_side = np.empty((1 << n, n + 2), dtype=np.int64)
    on_source_side[:, :n] = (masks[:, None] >> np.arange(n)) & 1
    on_source_side[:, net.source] = 1
    on_source_side[:, net.sink] = 0
    total = np.zeros(1 << n, dtype=np.int64)
    for u, v, c in net.arcs:
        total += c * on_source_side[:, u] * (1 - on_source_side[:, v])
    return int(total.min())


def _cancel_cycles(flow: dict, num_nodes: int) -> dict:
    flow = {a: x for a, x in flow.items() if x > 0}
    while True:
        out: list[list[int]] = [[] for _ in range(num_nodes)]
        for (u, v) in sorted(flow):
            out[u].append(v)
        cyc = _find_cycle(out, num_nodes)
        if cyc is None:
            return flow
        arcs = list(zip(cyc, cyc[1:] + cyc[:1]))
        delta = min(flow[a] for a in arcs)
        for a in arcs:
            flow[a] -= delta
            if flow[a] == 0:
                del flow[a]


def _find_cycle(out: list[list[int]], num_nodes: int):
    color = [0] * num_nodes
    for root in range(num_nodes):
        if color[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        trail = [root]
        while stack:
            x, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[x] = 2
                stack.pop()
                trail.pop()
            elif color[nxt] == 1:
                return trail[trail.index(nxt):]
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(out[nxt])))
                trail.append(nxt)
    return None


def decompose_paths(net: FlowNetwork, fr: FlowResult) -> list[list[int]]:
    """Split an integral flow into ``fr.value`` unit paths from ``F`` to ``K``.

    Flow cycles are cancelled first. Paths are peeled by breadth-first
    search over positive-flow arcs with lowest-id tie-breaking and are
    returned without the source and sink.
    """
    flow = _cancel_cycles(fr.flow, net.num_nodes)
    s, t = net.source, net.sink
    paths = []
    while True:
        out: list[list[int]] = [[] for _ in range(net.num_nodes)]
        for (u, v) in sorted(flow):
            out[u].append(v)
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y in out[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        walk = [t]
        while parent[walk[-1]] is not None:
            walk.append(parent[walk[-1]])
        walk.reverse()
        for a in zip(walk, walk[1:]):
            flow[a] -= 1
            if flow[a] == 0:
                del flow[a]
        paths.append(walk[1:-1])
    if len(paths) != fr.value:
        raise AssertionError(f"decomposition found {len(paths)} paths for flow value {fr.value}")
    return paths
