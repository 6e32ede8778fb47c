"""Structure theory of XU(n), the unitary matrices with all line sums 1.

XU(n) is isomorphic to U(n-1): conjugating the direct sum 1 (+) U by the
Fourier matrix F produces an XU matrix, and every XU matrix arises this
way. This module implements that embedding and its inverse, the
decomposition of circulant XU matrices over the cyclic permutations, the
constant-line-sum test for unitary weighted sums, and the transfer
matrices M[r,s] with their pitch arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DimensionError,
    MembershipError,
    StructureError,
    UnsupportedDimensionError,
)
from .numerics import (
    DEFAULT_TOL,
    as_complex_matrix,
    classify,
    dft_matrix,
    is_unitary,
    line_sums,
)
from .permsum import WeightedPermSum
from .permutations import (
    Permutation,
    SupercirculantLabel,
    supercirculant_perm,
)


def require_xu(m, tol: float = DEFAULT_TOL, what: str = "input") -> np.ndarray:
    """Return ``m`` as an array after checking XU membership at ``tol``."""
    a = as_complex_matrix(m)
    if not is_unitary(a, tol):
        raise MembershipError(f"{what} is not unitary at tolerance {tol}")
    rows, cols = line_sums(a)
    sums = np.concatenate([rows, cols])
    worst = int(np.argmax(np.abs(sums - 1.0)))
    dev = float(np.abs(sums - 1.0).max())
    if dev > tol:
        n = a.shape[0]
        kind = "row" if worst < n else "column"
        idx = worst % n + 1
        raise MembershipError(
            f"{what} is not XU at tolerance {tol}: {kind} {idx} sums to "
            f"{complex(sums[worst])}"
        )
    return a


def embed_core(u, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Embed a unitary U of size n-1 as the XU(n) matrix F (1 (+) U) F^-1."""
    a = as_complex_matrix(u)
    if not is_unitary(a, tol):
        raise MembershipError(f"core is not unitary at tolerance {tol}")
    n = a.shape[0] + 1
    f = dft_matrix(n)
    d = np.zeros((n, n), dtype=complex)
    d[0, 0] = 1.0
    d[1:, 1:] = a
    return f @ d @ f.conj().T


def extract_core(x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Invert the embedding: the U of size n-1 with X = F (1 (+) U) F^-1.

    Checks XU membership first, then conjugates and checks that the result
    is block diagonal; off-block leakage above ``tol`` raises
    StructureError with the observed maximum.
    """
    a = require_xu(x, tol)
    n = a.shape[0]
    if n < 2:
        raise DimensionError(f"extraction needs n >= 2, got n={n}")
    f = dft_matrix(n)
    b = f.conj().T @ a @ f
    leak = max(
        float(np.abs(b[0, 1:]).max()),
        float(np.abs(b[1:, 0]).max()),
        abs(b[0, 0] - 1.0),
    )
    if leak > tol:
        raise StructureError(
            f"Fourier conjugate is not block diagonal: leakage {leak:.3e} "
            f"exceeds tolerance {tol}"
        )
    return b[1:, 1:]


def circulant_xu_decompose(x, tol: float = DEFAULT_TOL) -> WeightedPermSum:
    """Write a circulant XU(n) matrix as a weighted sum of the n cyclic
    permutations.

    A circulant matrix is determined by its first row, and the circulant
    permutation with first-row unit in column l contributes exactly that
    entry: X = sum over l of X[1,l] * C[l,1]. The n weights sum to the
    line sum, 1. All n terms are kept, including zero weights.
    """
    a = require_xu(x, tol)
    n = a.shape[0]
    if n == 1:
        return WeightedPermSum(
            1, [(Permutation.identity(1), complex(a[0, 0]))], engine="circulant"
        )
    mc = classify(a, tol)
    if not mc.is_circulant:
        raise MembershipError(f"input is not circulant at tolerance {tol}")
    terms = [
        (supercirculant_perm(n, SupercirculantLabel(l, 1)), complex(a[0, l - 1]))
        for l in range(1, n + 1)
    ]
    return WeightedPermSum(n, terms, engine="circulant")


def constant_line_sum_check(
    s: WeightedPermSum, tol: float = DEFAULT_TOL
) -> Optional[complex]:
    """The constant line sum of a unitary weighted permutation sum.

    Any weighted sum of permutation matrices has every line sum equal to
    the weight sum; when the reconstructed matrix is additionally unitary,
    that common value has modulus 1 and the matrix is a global phase times
    an XU member. Returns the common line sum if the reconstruction is
    unitary and its 2n line sums agree within ``tol``; None otherwise.
    """
    a = s.reconstruct()
    if not is_unitary(a, tol):
        return None
    rows, cols = line_sums(a)
    sums = np.concatenate([rows, cols])
    mean = complex(sums.mean())
    if float(np.abs(sums - mean).max()) > tol:
        return None
    return mean


@dataclass(frozen=True)
class TransferMatrix:
    """The matrix M[r,s] with entries w^((k-1)r - (l-1)s) that carries core
    entry U[r,s] into every position of the embedded XU matrix.

    All entries are unit modulus and all line sums are 0.
    """

    n: int
    r: int
    s: int
    matrix: np.ndarray


def transfer_matrix(n: int, r: int, s: int) -> TransferMatrix:
    """Build M[r,s] for 1 <= r, s <= n-1."""
    if n < 2:
        raise DimensionError(f"transfer matrices need n >= 2, got n={n}")
    if not (1 <= r <= n - 1 and 1 <= s <= n - 1):
        raise DimensionError(
            f"transfer indices must lie in 1..{n - 1}, got r={r}, s={s}"
        )
    k = np.arange(n)
    expo = (r * k[:, None] - s * k[None, :]) % n
    m = np.exp(2j * math.pi * expo / n)
    return TransferMatrix(n=n, r=r, s=s, matrix=m)


def is_prime(n: int) -> bool:
    """Trial-division primality, ample for desk-scale dimensions."""
    if n < 2:
        return False
    return all(n % d != 0 for d in range(2, int(math.isqrt(n)) + 1))


def pitch(n: int, r: int, s: int) -> tuple[int, int]:
    """The pitches (x, y) of the transfer matrix M[r,s] for prime n.

    They solve s*x = r mod n and r*y = s mod n, so x = r/s and y = s/r in
    modular arithmetic, with x*y = 1 mod n.
    """
    if not is_prime(n):
        raise UnsupportedDimensionError(
            f"pitch equations need a prime dimension, got n={n}"
        )
    if not (1 <= r <= n - 1 and 1 <= s <= n - 1):
        raise DimensionError(
            f"transfer indices must lie in 1..{n - 1}, got r={r}, s={s}"
        )
    x = (r * pow(s, -1, n)) % n
    y = (s * pow(r, -1, n)) % n
    return (x, y)


def transfer_block_dims(n: int, r: int, s: int) -> tuple[int, int]:
    """Size (b, c) of the repeating block of M[r,s]: b = n/gcd(n,r),
    c = n/gcd(n,s). For prime n this is always (n, n)."""
    if not (1 <= r <= n - 1 and 1 <= s <= n - 1):
        raise DimensionError(
            f"transfer indices must lie in 1..{n - 1}, got r={r}, s={s}"
        )
    return (n // math.gcd(n, r), n // math.gcd(n, s))
