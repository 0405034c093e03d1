"""Rainbow time (inverse isoperimetric number) by exact enumeration.

The exhaustive search works on integer-scaled weights so that every
comparison is exact. Subsets are walked in blocks: the low ``BLOCK_BITS``
vertices form a dense numpy array of masks, the remaining high vertices
are stepped through in Gray-code order, updating the cross-boundary term
incrementally. Blocks are independent and merge by (ratio, -mask), so the
result does not depend on block order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import TooLarge
from .graph import Graph, fraction_str, from_mask, lambda2, laplacian, mask_connected

DEFAULT_MAX_N = 24
HARD_MAX_N = 64
BLOCK_BITS = 18
_INT_LIMIT = 1 << 56


@dataclass(frozen=True)
class RainbowReport:
    tau: Optional[Fraction]
    witness: Optional[tuple[int, ...]]
    spectral_lower: Optional[float]
    spectral_upper: Optional[float]
    method: str
    rounds_required: Optional[int]

    def to_dict(self) -> dict:
        return {
            "tau": None if self.tau is None else fraction_str(self.tau),
            "witness": None if self.witness is None else list(self.witness),
            "spectral_lower": self.spectral_lower,
            "spectral_upper": self.spectral_upper,
            "rounds_required": self.rounds_required,
            "method": self.method,
        }


def rounds_required(tau) -> int:
    """Whole rounds implied by a rainbow time: ``ceil(tau)``, at least one."""
    tau = Fraction(tau)
    if tau < 0:
        raise ValueError("rainbow time cannot be negative")
    return max(1, math.ceil(tau))


def _integer_weights(g: Graph) -> tuple[int, list[tuple[int, int, int]]]:
    scale = 1
    for _, _, w in g.edges:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    scaled = [(u, v, int(w * scale)) for u, v, w in g.edges]
    if sum(w for _, _, w in scaled) * HARD_MAX_N >= _INT_LIMIT:
        raise TooLarge("edge weights too large for exact 64-bit enumeration")
    return scale, scaled


def _check_size(g: Graph, max_n: int | None) -> None:
    cap = DEFAULT_MAX_N if max_n is None else max_n
    if g.n > min(cap, HARD_MAX_N):
        raise TooLarge(f"exhaustive enumeration on n={g.n} exceeds the cap of {min(cap, HARD_MAX_N)} vertices")


def _prefix_weights(bits: int, wmat: list[list[int]], v: int) -> np.ndarray:
    """``out[L] = sum of w(u, v) over u in L`` for masks ``L`` over the low ``bits`` vertices."""
    out = np.zeros(1, dtype=np.int64)
    for u in range(bits):
        out = np.concatenate([out, out + wmat[u][v]])
    return out


def best_ratio_mask(g: Graph, size_cap: int, forbid: int = 0,
                    max_n: int | None = None) -> tuple[Fraction, int]:
    """Maximise ``|F| / |dF|`` over nonempty ``F`` with ``|F| <= size_cap`` avoiding ``forbid``.

    Returns the exact maximum and the smallest mask attaining it.
    """
    _check_size(g, max_n)
    n = g.n
    scale, iedges = _integer_weights(g)
    wmat = [[0] * n for _ in range(n)]
    deg = [0] * n
    for u, v, w in iedges:
        wmat[u][v] = wmat[v][u] = w
        deg[u] += w
        deg[v] += w

    b = min(n, BLOCK_BITS)
    high = list(range(b, n))
    # boundary of each low-only set, built by doubling
    b_low = np.zeros(1, dtype=np.int64)
    for v in range(b):
        wv = _prefix_weights(v, wmat, v)
        b_low = np.concatenate([b_low, b_low + deg[v] - 2 * wv])
    pop_low = np.zeros(1, dtype=np.int64)
    for _ in range(b):
        pop_low = np.concatenate([pop_low, pop_low + 1])
    cross = {h: _prefix_weights(b, wmat, h) for h in high}

    order = np.argsort(pop_low, kind="stable")
    group_starts = np.searchsorted(pop_low[order], np.arange(b + 1))
    low_forbidden = np.zeros(1 << b, dtype=bool)
    for v in range(b):
        if (forbid >> v) & 1:
            low_forbidden |= ((np.arange(1 << b) >> v) & 1).astype(bool)
    sentinel = np.iinfo(np.int64).max

    best: Optional[tuple[int, int]] = None  # (size, scaled boundary)
    best_mask = -1
    c_arr = np.zeros(1 << b, dtype=np.int64)
    b_prefix = 0
    size_prefix = 0
    prefix = 0
    for step in range(1 << len(high)):
        if step:
            flip = (step & -step).bit_length() - 1
            h = high[flip]
            hbit = 1 << h
            w_to_prefix = sum(wmat[h][x] for x in from_mask(prefix))
            if prefix & hbit:
                prefix ^= hbit
                b_prefix -= deg[h] - 2 * w_to_prefix
                size_prefix -= 1
                c_arr -= cross[h]
            else:
                b_prefix += deg[h] - 2 * w_to_prefix
                prefix |= hbit
                size_prefix += 1
                c_arr += cross[h]
        if prefix & forbid or size_prefix > size_cap:
            continue
        bnd = b_prefix + b_low - 2 * c_arr
        invalid = low_forbidden.copy()
        if prefix == 0:
            invalid[0] = True
        filled = np.where(invalid, sentinel, bnd)
        group_min = np.minimum.reduceat(filled[order], group_starts)
        chunk_best = None
        for k in range(0, min(b, size_cap - size_prefix) + 1):
            m = int(group_min[k])
            if m == sentinel:
                continue
            cand = (size_prefix + k, m)
            if chunk_best is None or cand[0] * chunk_best[1] > chunk_best[0] * cand[1]:
                chunk_best = cand
        if chunk_best is None:
            continue
        if best is not None and chunk_best[0] * best[1] < best[0] * chunk_best[1]:
            continue
        s_star, b_star = chunk_best
        sizes = size_prefix + pop_low
        hits = (~invalid) & (sizes <= size_cap) & (sizes * b_star == s_star * bnd)
        low = int(np.argmax(hits))
        mask = prefix | low
        if best is None or chunk_best[0] * best[1] > best[0] * chunk_best[1] or mask < best_mask:
            best = chunk_best
            best_mask = mask
    if best is None:
        raise ValueError("no admissible vertex set")
    size, bnd = best
    return Fraction(size * scale, bnd), best_mask


def best_ratio_connected(g: Graph, size_cap: int, max_n: int | None = None) -> tuple[Fraction, int]:
    """Same objective, restricted to connected ``F`` with connected complement.

    Walks connected induced subgraphs directly, each exactly once, so it
    is much cheaper than the dense search on sparse graphs.
    """
    _check_size(g, max_n)
    n = g.n
    scale, iedges = _integer_weights(g)
    nbr = g.neighbor_masks
    wmat = [[0] * n for _ in range(n)]
    deg = [0] * n
    for u, v, w in iedges:
        wmat[u][v] = wmat[v][u] = w
        deg[u] += w
        deg[v] += w
    full = g.full_mask
    best = [None, -1]

    def consider(mask: int, size: int, bnd: int) -> None:
        if not mask_connected(nbr, full ^ mask):
            return
        cur = best[0]
        if cur is None or size * cur[1] > cur[0] * bnd or (size * cur[1] == cur[0] * bnd and mask < best[1]):
            best[0] = (size, bnd)
            best[1] = mask

    def grow(mask: int, size: int, bnd: int, ext: int, excl: int) -> None:
        consider(mask, size, bnd)
        if size == size_cap:
            return
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            inner = sum(wmat[w][x] for x in from_mask(mask & nbr[w]))
            new_ext = ext | (nbr[w] & ~(mask | ext | excl))
            grow(mask | low, size + 1, bnd + deg[w] - 2 * inner, new_ext, excl)
            excl |= low

    for v in range(n):
        lower = (1 << (v + 1)) - 1
        grow(1 << v, 1, deg[v], nbr[v] & ~lower, lower)
    size, bnd = best[0]
    return Fraction(size * scale, bnd), best[1]


def spectral_bounds(g: Graph) -> tuple[float, float]:
    """Laplacian bounds ``(lower, upper)`` on the rainbow time.

    ``upper = 2 / lambda2`` and ``lower = 1 / sqrt(lambda2 * (2*dmax - lambda2))``
    with ``dmax`` the largest weighted degree. The lower bound needs
    ``n > 3``; for two or three vertices it is replaced by the exact value.
    """
    lam = lambda2(laplacian(g))
    dmax = float(max(g.degrees))
    upper = 2.0 / lam
    gap = 2.0 * dmax - lam
    if g.n <= 3 or gap <= 0:
        tau, _ = best_ratio_mask(g, g.n // 2)
        return float(tau), upper
    return 1.0 / math.sqrt(lam * gap), upper


def rainbow_time_exact(g: Graph, prune_connected: bool = False, max_n: int | None = None,
                       with_spectral: bool = True) -> RainbowReport:
    """Exact rainbow time with its witness set.

    With ``prune_connected`` only connected sets with connected
    complements are searched; the value is identical but the witness is
    the smallest such set rather than the smallest overall.
    """
    if prune_connected:
        tau, mask = best_ratio_connected(g, g.n // 2, max_n=max_n)
    else:
        tau, mask = best_ratio_mask(g, g.n // 2, max_n=max_n)
    lower = upper = None
    if with_spectral:
        lower, upper = spectral_bounds(g)
    return RainbowReport(tau, tuple(from_mask(mask)), lower, upper, "exact", rounds_required(tau))


def rainbow_time_spectral(g: Graph) -> RainbowReport:
    lower, upper = spectral_bounds(g)
    return RainbowReport(None, None, lower, upper, "spectral-only", None)


def unrestricted_rainbow_time(g: Graph, root: int = 0, max_n: int | None = None) -> RainbowReport:
    """Largest ``|F| / |dF|`` over nonempty ``F`` that avoid ``root``, with no size cap."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} is not a vertex")
    tau, mask = best_ratio_mask(g, g.n - 1, forbid=1 << root, max_n=max_n)
    return RainbowReport(tau, tuple(from_mask(mask)), None, None, "exact", rounds_required(tau))


def isoperimetric_number(g: Graph, max_n: int | None = None) -> Fraction:
    return 1 / best_ratio_mask(g, g.n // 2, max_n=max_n)[0]
