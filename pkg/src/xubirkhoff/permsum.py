"""Weighted sums of permutation matrices.

``WeightedPermSum`` maps permutations to complex weights (duplicate
permutations always merge by adding their weights) and is the result type
of every decomposition of an XU matrix. ``ComplexPermSum`` carries terms
that are complex permutation matrices: a permutation together with one
unit-modulus phase per row.

Reconstruction always iterates terms in lexicographic image order so that
reported residuals are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DimensionError
from .permutations import (
    Permutation,
    perm_from_json,
    perm_to_json,
    perm_to_matrix,
)


class WeightedPermSum:
    """A finite map from permutations of {1..n} to complex weights."""

    def __init__(
        self,
        n: int,
        terms: Iterable[tuple[Permutation, complex]] = (),
        engine: str = "",
    ):
        if n < 1:
            raise DimensionError(f"dimension must be positive, got n={n}")
        self.n = n
        self.engine = engine
        self._terms: dict[Permutation, complex] = {}
        for p, w in terms:
            self.add(p, w)

    def add(self, p: Permutation, w: complex) -> None:
        if p.n != self.n:
            raise DimensionError(
                f"term size {p.n} does not match sum size {self.n}"
            )
        self._terms[p] = self._terms.get(p, 0.0) + complex(w)

    def items(self) -> list[tuple[Permutation, complex]]:
        """Terms sorted lexicographically by permutation image."""
        return sorted(self._terms.items(), key=lambda t: t[0].image)

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, p: Permutation) -> complex:
        return self._terms.get(p, 0.0)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._terms

    @property
    def term_count(self) -> int:
        return len(self._terms)

    def weight_sum(self) -> complex:
        return complex(sum(w for _, w in self.items()))

    def sq_moduli_sum(self) -> float:
        return float(sum(abs(w) ** 2 for _, w in self.items()))

    def reconstruct(self) -> np.ndarray:
        """The matrix sum(w * matrix(p)) over all terms."""
        out = np.zeros((self.n, self.n), dtype=complex)
        for p, w in self.items():
            for k in range(self.n):
                out[k, p.image[k] - 1] += w
        return out

    def pruned(self, eps: float) -> "WeightedPermSum":
        """Copy without the terms of weight modulus <= eps."""
        return WeightedPermSum(
            self.n,
            ((p, w) for p, w in self.items() if abs(w) > eps),
            engine=self.engine,
        )

    def scaled(self, c: complex) -> "WeightedPermSum":
        return WeightedPermSum(
            self.n, ((p, c * w) for p, w in self.items()), engine=self.engine
        )

    def __repr__(self) -> str:
        return (
            f"WeightedPermSum(n={self.n}, terms={self.term_count}, "
            f"engine={self.engine!r})"
        )


@dataclass(frozen=True)
class ComplexPermTerm:
    """One weighted complex permutation matrix.

    The matrix has its only nonzero entry of row k at column sigma(k) with
    value ``phases[k-1]``; all phases are unit modulus.
    """

    perm: Permutation
    phases: tuple[complex, ...]
    weight: complex

    def matrix(self) -> np.ndarray:
        n = self.perm.n
        m = np.zeros((n, n), dtype=complex)
        for k in range(n):
            m[k, self.perm.image[k] - 1] = self.phases[k]
        return m


@dataclass
class ComplexPermSum:
    """A weighted sum of complex permutation matrices."""

    n: int
    terms: list[ComplexPermTerm] = field(default_factory=list)
    engine: str = ""

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def items_sorted(self) -> list[ComplexPermTerm]:
        return sorted(self.terms, key=lambda t: t.perm.image)

    def weight_sum(self) -> complex:
        return complex(sum(t.weight for t in self.items_sorted()))

    def sq_moduli_sum(self) -> float:
        return float(sum(abs(t.weight) ** 2 for t in self.items_sorted()))

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for t in self.items_sorted():
            for k in range(self.n):
                out[k, t.perm.image[k] - 1] += t.weight * t.phases[k]
        return out

    def pruned(self, eps: float) -> "ComplexPermSum":
        kept = [t for t in self.terms if abs(t.weight) > eps]
        return ComplexPermSum(self.n, kept, engine=self.engine)


# ---------------------------------------------------------------------------
# JSON interchange
#
# Decomposition schema:
#     {"n": n, "engine": name,
#      "terms": [{"perm": [...], "weight": [re, im],
#                 "phases": [[re, im], ...]   -- complex terms only
#                }, ...],
#      "report": {...}}   -- attached by the caller, not by these helpers
# ---------------------------------------------------------------------------


def _weight_json(w: complex) -> list[float]:
    return [float(w.real), float(w.imag)]


def perm_sum_to_json(s) -> dict:
    """Serialize a WeightedPermSum or ComplexPermSum (terms in lexicographic
    order, without a report)."""
    if isinstance(s, WeightedPermSum):
        terms = [
            {"perm": list(p.image), "weight": _weight_json(w)}
            for p, w in s.items()
        ]
    elif isinstance(s, ComplexPermSum):
        terms = [
            {
                "perm": list(t.perm.image),
                "phases": [_weight_json(ph) for ph in t.phases],
                "weight": _weight_json(t.weight),
            }
            for t in s.items_sorted()
        ]
    else:
        raise TypeError(f"cannot serialize {type(s).__name__}")
    return {"n": s.n, "engine": s.engine, "terms": terms}


def perm_sum_from_json(obj):
    """Parse the decomposition schema; returns a WeightedPermSum when no
    term carries phases, otherwise a ComplexPermSum."""
    if not isinstance(obj, dict) or "n" not in obj or "terms" not in obj:
        raise ValueError("decomposition JSON must have 'n' and 'terms' fields")
    n = int(obj["n"])
    engine = str(obj.get("engine", ""))
    raw = obj["terms"]
    if any("phases" in t for t in raw):
        terms = []
        for t in raw:
            p = perm_from_json({"n": n, "image": t["perm"]})
            phases = tuple(complex(float(a), float(b)) for a, b in t["phases"])
            if len(phases) != n:
                raise ValueError("term phases must have length n")
            w = complex(float(t["weight"][0]), float(t["weight"][1]))
            terms.append(ComplexPermTerm(p, phases, w))
        return ComplexPermSum(n, terms, engine=engine)
    pairs = []
    for t in raw:
        p = perm_from_json({"n": n, "image": t["perm"]})
        w = complex(float(t["weight"][0]), float(t["weight"][1]))
        pairs.append((p, w))
    return WeightedPermSum(n, pairs, engine=engine)


__all__ = [
    "WeightedPermSum",
    "ComplexPermTerm",
    "ComplexPermSum",
    "perm_sum_to_json",
    "perm_sum_from_json",
    "perm_to_json",
    "perm_to_matrix",
]
