"""Factor a unitary U as e^(i*alpha) Z1 X Z2 with X in XU(n).

Z1 and Z2 are diagonal unitaries whose first entry is 1 (the phase freedom
is absorbed into alpha) and X has all 2n line sums equal to 1. The factors
are found by alternating phase normalization: left-multiplying by the
conjugate phases of the row sums and right-multiplying by the conjugate
phases of the column sums monotonically increases the total entry sum, and
the fixed points with equal line sums are exactly the XU cores. A sum that
is exactly zero has no phase and is left untouched for that half step.

Unstable fixed points with positive-real but unequal line sums exist (for
example the rotation by pi/4, whose second row and column sums vanish);
the iteration detects them by a step that changes nothing and restarts
from a random diagonal-phase perturbation drawn from a seeded counter-based
generator (numpy Philox), so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, MembershipError
from .numerics import as_complex_matrix, is_unitary

UNITARY_TOL = 1e-8
HARD_STALL = 1e-15


@dataclass(frozen=True)
class ScalingOptions:
    """Knobs for the alternating phase normalization.

    tol is the target spread: the maximum modulus distance of any of the
    2n line sums from 1.
    """

    tol: float = 1e-10
    max_iters: int = 10_000
    max_restarts: int = 8
    rng_seed: int = 0

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.max_restarts < 0:
            raise ValueError(
                f"max_restarts must be >= 0, got {self.max_restarts}"
            )


@dataclass(frozen=True)
class ZXZFactorization:
    """Result of ``zxz_scale``: input = e^(i*alpha) diag(z1) core diag(z2).

    z1 and z2 are unit-modulus vectors with first entry 1; core is XU
    within the achieved spread. iterations counts steps in the successful
    attempt, restarts how many perturbed attempts preceded it.
    """

    alpha: float
    z1: np.ndarray
    z2: np.ndarray
    core: np.ndarray
    spread: float
    iterations: int
    restarts: int

    def reconstruct(self) -> np.ndarray:
        return (
            np.exp(1j * self.alpha)
            * self.z1[:, None]
            * self.core
            * self.z2[None, :]
        )


def _phases(v: np.ndarray) -> np.ndarray:
    """v/|v| entrywise, with phase 1 wherever v is exactly zero."""
    a = np.abs(v)
    safe = np.where(a == 0, 1.0, a)
    return np.where(a == 0, 1.0 + 0.0j, v / safe)


def _line_sum_spread(v: np.ndarray) -> float:
    return max(
        float(np.abs(v.sum(axis=1) - 1.0).max()),
        float(np.abs(v.sum(axis=0) - 1.0).max()),
    )


def zxz_scale(u, opts: ScalingOptions | None = None) -> ZXZFactorization:
    """Factor a unitary matrix through the XU subgroup.

    Raises MembershipError for non-unitary input and ConvergenceError
    (carrying the best spread seen) if no attempt reaches opts.tol.
    """
    opts = opts or ScalingOptions()
    a = as_complex_matrix(u)
    if not is_unitary(a, UNITARY_TOL):
        raise MembershipError(
            f"scaling needs a unitary input at tolerance {UNITARY_TOL}"
        )
    n = a.shape[0]
    rng = np.random.Generator(np.random.Philox(opts.rng_seed))
    best = np.inf

    for restart in range(opts.max_restarts + 1):
        if restart == 0:
            left = np.ones(n, dtype=complex)
            right = np.ones(n, dtype=complex)
        else:
            left = np.exp(2j * np.pi * rng.random(n))
            right = np.exp(2j * np.pi * rng.random(n))
        v = left[:, None] * a * right[None, :]

        for it in range(opts.max_iters):
            spread = _line_sum_spread(v)
            best = min(best, spread)
            if spread <= opts.tol:
                return _assemble(a, left, right, v, spread, it, restart)
            row_ph = np.conj(_phases(v.sum(axis=1)))
            w = v * row_ph[:, None]
            col_ph = np.conj(_phases(w.sum(axis=0)))
            w = w * col_ph[None, :]
            if float(np.abs(w - v).max()) <= HARD_STALL:
                break
            v = w
            left = left * row_ph
            right = right * col_ph

    raise ConvergenceError(
        f"no convergence to spread {opts.tol} after "
        f"{opts.max_restarts + 1} attempts; best spread {best:.3e}",
        best_spread=float(best),
    )


def _assemble(a, left, right, core, spread, iterations, restarts):
    # a = diag(conj(left)) core diag(conj(right)); normalize the leading
    # entries of both diagonals to 1 and absorb their product into alpha.
    z1 = np.conj(left)
    z2 = np.conj(right)
    phase = z1[0] * z2[0]
    alpha = float(np.angle(phase))
    z1 = z1 / z1[0]
    z2 = z2 / z2[0]
    # z1[0], z2[0] are exactly 1 after division; phase drift relative to
    # exp(1j*alpha) is below 1e-16 and lands in the reconstruction residual.
    return ZXZFactorization(
        alpha=alpha,
        z1=z1,
        z2=z2,
        core=core,
        spread=float(spread),
        iterations=iterations,
        restarts=restarts,
    )
