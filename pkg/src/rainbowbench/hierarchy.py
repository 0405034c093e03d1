"""Closed-form rainbow times for hierarchical products and weighted hierarchies.

All arithmetic is exact. A hierarchy over base graph ``G`` with ``k``
levels has level weights ``alpha[0..k-1]``; level 1 is innermost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import OddBaseUnsupported
from .families import _alpha_vector
from .graph import Graph, as_fraction, fraction_str


@dataclass(frozen=True)
class HierarchyEval:
    tau_closed_form: Fraction
    dominating_option: str
    per_level_candidates: tuple[tuple[int, Fraction], ...]
    stats: dict = field(default_factory=dict)
    regime: Optional[str] = None

    def to_dict(self) -> dict:
        out = {
            "tau_closed_form": fraction_str(self.tau_closed_form),
            "dominating_option": self.dominating_option,
            "per_level_candidates": [[lvl, fraction_str(v)] for lvl, v in self.per_level_candidates],
            "stats": {k: fraction_str(v) if isinstance(v, Fraction) else v for k, v in self.stats.items()},
        }
        if self.regime is not None:
            out["regime"] = self.regime
        return out


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    alpha: Fraction
    k: int
    d: int
    hierarchy_tau_scaling: float
    grid_tau_scaling: float
    rainbow_condition_met: bool
    weight_condition_met: bool
    verdict: bool
    instance: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": fraction_str(self.alpha),
            "k": self.k,
            "d": self.d,
            "hierarchy_tau_scaling": self.hierarchy_tau_scaling,
            "grid_tau_scaling": self.grid_tau_scaling,
            "rainbow_condition_met": self.rainbow_condition_met,
            "weight_condition_met": self.weight_condition_met,
            "verdict": self.verdict,
            "instance": {k: fraction_str(v) if isinstance(v, Fraction) else v for k, v in self.instance.items()},
        }


def hp_rainbow_time(tau_h1, u_h2, size_h2: int) -> Fraction:
    """Rainbow time of ``H1 ⊓ H2`` from ``tau(H1)``, ``u(H2)`` and ``|H2|``.

    ``tau_h1`` must already include any weight applied to the connecting
    copy of ``H1``; likewise ``u_h2`` for the copies of ``H2``.
    """
    return max(Fraction(u_h2), size_h2 * Fraction(tau_h1))


def _label(level: int, k: int) -> str:
    if level == k:
        return "top"
    if level == 1:
        return "bottom"
    return f"level-{level}"


def _argmax(cands: Sequence[tuple[int, Fraction]]) -> tuple[int, Fraction]:
    best = cands[0]
    for lvl, val in cands[1:]:
        if val > best[1]:
            best = (lvl, val)
    return best


def hierarchy_stats(size_g: int, edges_g: int, root_degree, max_nonroot_degree, alpha) -> dict:
    """Total edge weight and max weighted degree of a hierarchy, without building it.

    The degrees are those of the unit-weight base graph. A vertex that is
    a root on levels ``1..j-1`` and a non-root on level ``j`` collects
    ``alpha_i * root_degree`` from each lower level plus ``alpha_j`` times
    its own base degree; a vertex that is the root everywhere collects
    ``root_degree`` on every level.
    """
    k = len(alpha)
    total = sum(alpha[i - 1] * edges_g * size_g ** (k - i) for i in range(1, k + 1))
    root_degree = Fraction(root_degree)
    best = sum(alpha, Fraction(0)) * root_degree
    running = Fraction(0)
    for j in range(1, k + 1):
        if max_nonroot_degree is not None:
            best = max(best, running + alpha[j - 1] * Fraction(max_nonroot_degree))
        running += alpha[j - 1] * root_degree
    return {"N": size_g**k, "total_edge_weight": total, "max_degree": best}


def hierarchy_rainbow_time(tau_g, u_g, size_g: int, k: int, alpha,
                           base: Optional[Graph] = None) -> HierarchyEval:
    """Rainbow time of a ``k``-level hierarchy from base-graph quantities.

    Candidates: ``|G|**(k-1) / alpha_k * tau(G)`` for a cut at the top
    level and ``|G|**(i-1) / alpha_i * u(G)`` for each lower level ``i``.
    If ``base`` is given its realized hierarchy statistics are attached.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    weights = _alpha_vector(alpha, k)
    tau_g = Fraction(tau_g)
    u_g = Fraction(u_g)
    cands = [(i, Fraction(size_g ** (i - 1)) / weights[i - 1] * u_g) for i in range(1, k)]
    cands.append((k, Fraction(size_g ** (k - 1)) / weights[k - 1] * tau_g))
    lvl, val = _argmax(cands)
    stats = {}
    if base is not None:
        deg = base.degrees
        nonroot = max(deg[1:]) if base.n > 1 else None
        stats = hierarchy_stats(base.n, len(base.edges), deg[0], nonroot, weights)
        stats = {"total_edge_weight": stats["total_edge_weight"], "max_degree": stats["max_degree"], "N": stats["N"]}
    return HierarchyEval(val, _label(lvl, k), tuple(cands), stats)


def kn_hierarchy_rainbow_time(n: int, k: int, alpha) -> HierarchyEval:
    """Complete-graph hierarchy with geometric level weights ``alpha**(i-1)``.

    Three candidates: the bottom cut (always 1), the cut one below the top
    ``(n/alpha)**(k-2)``, and the top cut ``(n/alpha)**(k-1) * 2/n``. Odd
    ``n`` is refused; use :func:`hierarchy_rainbow_time` with
    ``tau(K_n) = 1/ceil(n/2)`` and ``u(K_n) = 1`` instead.
    """
    if n < 2:
        raise ValueError("base size must be at least 2")
    if n % 2:
        raise OddBaseUnsupported(
            f"n={n} is odd; call hierarchy_rainbow_time with tau=1/{(n + 1) // 2}, u=1")
    if k < 2:
        raise ValueError("the three-option formula needs k >= 2")
    a = as_fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    ratio = Fraction(n) / a
    cands = [(1, Fraction(1))]
    if k > 2:
        cands.append((k - 1, ratio ** (k - 2)))
    cands.append((k, ratio ** (k - 1) * Fraction(2, n)))
    lvl, val = _argmax(cands)
    regime = "alpha>n" if a > n else ("alpha<n" if a < n else "alpha=n")
    weights = [a**i for i in range(k)]
    stats = hierarchy_stats(n, n * (n - 1) // 2, n - 1, n - 1, weights)
    return HierarchyEval(val, _label(lvl, k), tuple(cands), stats, regime)


def compare_to_grid(n: int, alpha, k: int, d: int) -> ComparisonReport:
    """Check ``n**(1 - 1/d) <= alpha < n`` for a ``K_n`` hierarchy against a ``d``-grid.

    The lower end (rainbow time no worse than the grid) is tested exactly
    as ``alpha**d >= n**(d-1)``; the upper end keeps total edge weight
    linear in ``N``. Both asymptotic exponents are reported alongside the
    concrete ``N = n**k`` instance.
    """
    if n < 2 or d < 1 or k < 2:
        raise ValueError("need n >= 2, d >= 1, k >= 2")
    a = as_fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    rainbow_ok = a**d >= Fraction(n) ** (d - 1)
    weight_ok = rainbow_ok and a < n
    hier_exp = max(0.0, 1.0 - math.log(a) / math.log(n))
    grid_exp = 1.0 / d
    if n % 2 == 0:
        ev = kn_hierarchy_rainbow_time(n, k, a)
    else:
        ev = hierarchy_rainbow_time(Fraction(1, (n + 1) // 2), 1, n, k, a)
        weights = [a**i for i in range(k)]
        ev = HierarchyEval(ev.tau_closed_form, ev.dominating_option, ev.per_level_candidates,
                           hierarchy_stats(n, n * (n - 1) // 2, n - 1, n - 1, weights))
    big_n = n**k
    instance = {
        "N": big_n,
        "hierarchy_tau": ev.tau_closed_form,
        "hierarchy_total_edge_weight": ev.stats["total_edge_weight"],
        "hierarchy_max_degree": ev.stats["max_degree"],
        "grid_tau_reference": float(big_n) ** grid_exp,
        "grid_total_edge_weight_reference": d * big_n,
        "grid_max_degree": 2 * d,
    }
    return ComparisonReport(n, a, k, d, hier_exp, grid_exp, rainbow_ok, weight_ok,
                            rainbow_ok and weight_ok, instance)
