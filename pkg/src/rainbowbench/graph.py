"""Weighted undirected graphs and the cut / Laplacian primitives built on them.

Weights are exact :class:`fractions.Fraction` values. A vertex set is any
iterable of vertex ids; internally it is normalised to a ``frozenset`` or,
for enumeration code, to an integer bit mask with bit ``i`` standing for
vertex ``i``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvergenceFailure, DisconnectedGraph, EmptyOrFullSet, InvalidEdge

JACOBI_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction, float or ``"num/den"`` string exactly."""
    if isinstance(value, bool):
        raise InvalidEdge(f"boolean is not a weight: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidEdge(f"cannot parse weight {value!r}") from exc
    raise InvalidEdge(f"unsupported weight type {type(value).__name__}")


def format_fraction(q: Fraction):
    """Integers stay integers in JSON; everything else becomes ``"num/den"``."""
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Graph:
    """Connected weighted graph on vertices ``0..n-1``.

    ``edges`` holds ``(u, v, w)`` triples with ``u < v``, sorted, no
    duplicates and strictly positive rational ``w``. Use :func:`new_graph`
    to build one from loose input; the constructor assumes canonical data
    but still validates it.
    """

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        _validate(self.n, self.edges)

    @cached_property
    def adjacency(self) -> tuple[dict[int, Fraction], ...]:
        adj: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return tuple(adj)

    @cached_property
    def degrees(self) -> tuple[Fraction, ...]:
        return tuple(sum(nbrs.values(), Fraction(0)) for nbrs in self.adjacency)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in nbrs) for nbrs in self.adjacency)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def weight(self, u: int, v: int) -> Fraction:
        return self.adjacency[u].get(v, Fraction(0))

    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for _, _, w in self.edges)

    def scaled(self, factor) -> "Graph":
        c = as_fraction(factor)
        return Graph(self.n, tuple((u, v, w * c) for u, v, w in self.edges))

    def to_json(self) -> str:
        return json.dumps(graph_to_dict(self), separators=(", ", ": "))


def _validate(n: int, edges) -> None:
    if not isinstance(n, int) or n < 2:
        raise InvalidEdge(f"a graph needs at least two vertices, got n={n!r}")
    seen = set()
    prev = None
    for u, v, w in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) has an out-of-range vertex id")
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        if u > v:
            raise InvalidEdge(f"edge ({u}, {v}) is not canonical (u < v)")
        if (u, v) in seen:
            raise InvalidEdge(f"duplicate edge ({u}, {v})")
        if not isinstance(w, Fraction) or w <= 0:
            raise InvalidEdge(f"edge ({u}, {v}) has nonpositive or non-rational weight {w!r}")
        if prev is not None and (u, v) < prev:
            raise InvalidEdge("edges are not sorted")
        seen.add((u, v))
        prev = (u, v)
    # connectivity by BFS from vertex 0
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    reached = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != n:
        missing = sorted(set(range(n)) - reached)
        raise DisconnectedGraph(f"vertices {missing} are unreachable from vertex 0")


def new_graph(n: int, edges: Iterable[Sequence]) -> Graph:
    """Validate and canonicalise an edge list into a :class:`Graph`.

    Edges may be given in either orientation and any order; weights accept
    anything :func:`as_fraction` does. Raises :class:`InvalidEdge` or
    :class:`DisconnectedGraph`.
    """
    canon = {}
    for edge in edges:
        if len(edge) != 3:
            raise InvalidEdge(f"edge must be (u, v, w), got {edge!r}")
        u, v, w = edge
        if isinstance(u, bool) or isinstance(v, bool) or not isinstance(u, int) or not isinstance(v, int):
            raise InvalidEdge(f"vertex ids must be integers, got ({u!r}, {v!r})")
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        a, b = (u, v) if u < v else (v, u)
        if (a, b) in canon:
            raise InvalidEdge(f"duplicate edge ({a}, {b})")
        canon[(a, b)] = as_fraction(w)
    return Graph(n, tuple((a, b, canon[(a, b)]) for a, b in sorted(canon)))


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v, format_fraction(w)] for u, v, w in g.edges]}


def graph_from_dict(data: dict) -> Graph:
    try:
        n = data["n"]
        edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise InvalidEdge("graph JSON needs 'n' and 'edges'") from exc
    return new_graph(n, [tuple(e) for e in edges])


def load_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def dump_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_json())
        fh.write("\n")


# -- vertex sets -------------------------------------------------------------

def to_mask(f: Iterable[int], n: int | None = None) -> int:
    mask = 0
    for v in f:
        if n is not None and not 0 <= v < n:
            raise EmptyOrFullSet(f"vertex {v} is outside 0..{n - 1}")
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _proper_mask(g: Graph, f: Iterable[int]) -> int:
    mask = to_mask(f, g.n)
    if mask == 0 or mask == g.full_mask:
        raise EmptyOrFullSet("the vertex set must be a nonempty proper subset")
    return mask


def complement(g: Graph, f: Iterable[int]) -> frozenset[int]:
    members = set(f)
    return frozenset(v for v in range(g.n) if v not in members)


def boundary_weight(g: Graph, f: Iterable[int]) -> Fraction:
    """Total weight of edges with exactly one endpoint in ``f``."""
    mask = _proper_mask(g, f)
    total = Fraction(0)
    for u, v, w in g.edges:
        if ((mask >> u) & 1) != ((mask >> v) & 1):
            total += w
    return total


def t_ratio(g: Graph, f: Iterable[int]) -> Fraction:
    """Exact ``|F| / |dF|``: the entanglement-capacity bound on the time to pair ``F``."""
    f = frozenset(f)
    return Fraction(len(f)) / boundary_weight(g, f)


def is_connected_induced(g: Graph, f: Iterable[int]) -> bool:
    mask = to_mask(f, g.n)
    if mask == 0:
        raise EmptyOrFullSet("connectivity of an empty set is undefined")
    return mask_connected(g.neighbor_masks, mask)


def mask_connected(neighbor_masks: Sequence[int], mask: int) -> bool:
    start = mask & -mask
    reach = start
    frontier = start
    while frontier:
        grow = 0
        while frontier:
            low = frontier & -frontier
            grow |= neighbor_masks[low.bit_length() - 1]
            frontier ^= low
        grow &= mask & ~reach
        reach |= grow
        frontier = grow
    return reach == mask


# -- spectra -----------------------------------------------------------------

def laplacian(g: Graph) -> np.ndarray:
    """Weighted Laplacian ``D - W`` as a float array."""
    L = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        x = float(w)
        L[u, v] -= x
        L[v, u] -= x
        L[u, u] += x
        L[v, v] += x
    return L


def jacobi_eigenvalues(A: np.ndarray, tol: float = JACOBI_TOL,
                       max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the Frobenius norm of the off-diagonal part drops below
    ``tol`` (scaled by the matrix norm when that exceeds one). Returns the
    eigenvalues sorted ascending.
    """
    A = np.array(A, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(A, A.T, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    m = A.shape[0]
    threshold = tol * max(1.0, float(np.linalg.norm(A)))

    def off_norm():
        off = A - np.diag(np.diag(A))
        return float(np.sqrt(np.sum(off * off)))

    for _ in range(max_sweeps):
        if off_norm() < threshold:
            return np.sort(np.diag(A))
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
    if off_norm() < threshold:
        return np.sort(np.diag(A))
    raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")


def lambda2(L: np.ndarray) -> float:
    """Algebraic connectivity: the second-smallest Laplacian eigenvalue."""
    return float(jacobi_eigenvalues(L)[1])
