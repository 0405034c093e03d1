"""Upper bounds on entanglement generated across a bipartition.

Three physical readings of an edge weight: Bell pairs per round
(``bell``), two-qubit unitaries per round (``unitary``, each worth two
Bell pairs), and a Hamiltonian coupling-norm bound (``hamiltonian``).
Bounds are in ebits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import EmptyOrFullSet, InvalidBipartition
from .graph import Graph, as_fraction, boundary_weight, fraction_str

MODELS = ("bell", "unitary", "hamiltonian")

# Entangling-rate prefactor for pairwise qubit Hamiltonians; natural log.
SIE_CONSTANT = 36 * math.log(2)


@dataclass(frozen=True)
class CapacityQuery:
    graph: Graph
    f: frozenset
    model: str
    duration: Union[int, float, Fraction]

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.duration < 0:
            raise ValueError("duration must be nonnegative")


def _boundary(q: CapacityQuery) -> Fraction:
    try:
        return boundary_weight(q.graph, q.f)
    except EmptyOrFullSet as exc:
        raise InvalidBipartition(str(exc)) from exc


def capacity_bell(q: CapacityQuery) -> Fraction:
    return Fraction(q.duration) * _boundary(q)


def capacity_unitary(q: CapacityQuery) -> Fraction:
    return 2 * Fraction(q.duration) * _boundary(q)


def capacity_hamiltonian(q: CapacityQuery) -> float:
    return SIE_CONSTANT * float(_boundary(q)) * float(q.duration)


def capacity(q: CapacityQuery):
    return {"bell": capacity_bell, "unitary": capacity_unitary,
            "hamiltonian": capacity_hamiltonian}[q.model](q)


def min_rounds_for_target(g: Graph, f: Iterable[int], target_ebits, model: str = "bell") -> int:
    """Fewest rounds whose capacity across ``(f, complement)`` reaches ``target_ebits``.

    For the Hamiltonian model the answer is in units of time, rounded up.
    """
    target = as_fraction(target_ebits)
    if target < 0:
        raise ValueError("target must be nonnegative")
    per_round = capacity(CapacityQuery(g, frozenset(f), model, 1))
    if target == 0:
        return 0
    if model == "hamiltonian":
        return math.ceil(float(target) / per_round)
    return math.ceil(target / per_round)


def capacity_report(q: CapacityQuery) -> dict:
    value = capacity(q)
    return {
        "model": q.model,
        "boundary": fraction_str(_boundary(q)),
        "capacity": value if isinstance(value, float) else fraction_str(value),
        "duration": q.duration if not isinstance(q.duration, Fraction) else fraction_str(q.duration),
    }
