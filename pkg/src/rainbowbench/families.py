"""Deterministic generators for the benchmark graph families.

Every generator returns a validated :class:`~rainbowbench.graph.Graph`.
The root of any graph is vertex 0; hierarchical products join copies at
their roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidSpec
from .graph import Graph, as_fraction, new_graph

FAMILIES = ("complete", "star", "path", "cycle", "grid", "hierarchy")


def complete(n: int) -> Graph:
    _need(n >= 2, f"complete graph needs n >= 2, got {n}")
    return new_graph(n, [(u, v, 1) for u, v in itertools.combinations(range(n), 2)])


def star(n: int) -> Graph:
    _need(n >= 2, f"star needs n >= 2, got {n}")
    return new_graph(n, [(0, v, 1) for v in range(1, n)])


def path(n: int) -> Graph:
    _need(n >= 2, f"path needs n >= 2, got {n}")
    return new_graph(n, [(v, v + 1, 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return new_graph(n, [(v, (v + 1) % n, 1) for v in range(n)])


def grid(dims: Sequence[int]) -> Graph:
    """Cartesian product of paths with row-major vertex ids (no wraparound)."""
    dims = list(dims)
    _need(len(dims) >= 1, "grid needs at least one dimension")
    _need(all(d >= 2 for d in dims), f"grid dimensions must all be >= 2, got {dims}")
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    edges = []
    for coord in itertools.product(*(range(d) for d in dims)):
        vid = sum(c * s for c, s in zip(coord, strides))
        for axis, (c, d) in enumerate(zip(coord, dims)):
            if c + 1 < d:
                edges.append((vid, vid + strides[axis], 1))
    total = 1
    for d in dims:
        total *= d
    return new_graph(total, edges)


def hierarchical_product(g: Graph, h: Graph, g_weight=1, h_weight=1) -> Graph:
    """``|g|`` copies of ``h`` whose roots are wired together by ``g``.

    Copy ``c`` of ``h`` occupies ids ``c*|h| .. (c+1)*|h| - 1``. Internal
    edges of each copy are scaled by ``h_weight``; the root-to-root edges
    copied from ``g`` are scaled by ``g_weight``.
    """
    gw = as_fraction(g_weight)
    hw = as_fraction(h_weight)
    if gw <= 0 or hw <= 0:
        raise InvalidSpec("hierarchical product weights must be positive")
    size = h.n
    edges = []
    for c in range(g.n):
        off = c * size
        edges.extend((off + u, off + v, w * hw) for u, v, w in h.edges)
    edges.extend((a * size, b * size, w * gw) for a, b, w in g.edges)
    return new_graph(g.n * size, edges)


def geometric_alpha(alpha, k: int) -> list[Fraction]:
    """Level weights ``alpha**(i-1)`` for ``i = 1..k``."""
    a = as_fraction(alpha)
    return [a**i for i in range(k)]


def hierarchy(g: Graph, k: int, alpha) -> Graph:
    """``k``-level weighted hierarchy over base graph ``g``.

    ``alpha`` is either a length-``k`` sequence of level weights (level 1
    innermost, level ``k`` on top) or a single ratio, meaning the geometric
    weights ``alpha**(i-1)``.
    """
    _need(isinstance(k, int) and k >= 1, f"hierarchy needs k >= 1, got {k!r}")
    weights = _alpha_vector(alpha, k)
    out = g.scaled(weights[0])
    for level in range(1, k):
        out = hierarchical_product(g, out, weights[level], 1)
    return out


def _alpha_vector(alpha, k: int) -> list[Fraction]:
    if isinstance(alpha, (list, tuple)):
        weights = [as_fraction(a) for a in alpha]
        _need(len(weights) == k, f"expected {k} level weights, got {len(weights)}")
    else:
        weights = geometric_alpha(alpha, k)
    _need(all(a > 0 for a in weights), "level weights must be positive")
    return weights


def graph_stats(g: Graph) -> dict[str, Fraction]:
    return {
        "total_edge_weight": sum((w for _, _, w in g.edges), Fraction(0)),
        "max_degree": max(g.degrees),
    }


@dataclass(frozen=True)
class FamilySpec:
    """Declarative description of a generated graph.

    ``params`` is ``[n]`` for complete/star/path/cycle and the dimension
    list for grid. A hierarchy takes ``params = [n, k]`` over the base
    family ``base`` (default complete) with ``alpha`` either a ratio or a
    per-level weight list.
    """

    family: str
    params: tuple[int, ...]
    alpha: object = None
    base: str = "complete"

    def generate(self) -> Graph:
        return generate(self)


def generate(spec: FamilySpec) -> Graph:
    fam = spec.family
    params = list(spec.params)
    if fam not in FAMILIES:
        raise InvalidSpec(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    _need(all(isinstance(p, int) and p >= 1 for p in params), f"params must be positive integers, got {params}")
    if fam == "grid":
        return grid(params)
    if fam == "hierarchy":
        _need(len(params) == 2, "hierarchy params are [n, k]")
        _need(spec.base != "hierarchy" and spec.base != "grid", "hierarchy base must be a single-size family")
        n, k = params
        base = generate(FamilySpec(spec.base, (n,)))
        return hierarchy(base, k, 1 if spec.alpha is None else spec.alpha)
    _need(len(params) == 1, f"{fam} takes exactly one size parameter")
    return {"complete": complete, "star": star, "path": path, "cycle": cycle}[fam](params[0])


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidSpec(message)
