"""Process parameters, the Laplace exponent, and its right-inverse point.

The model is a unit of positive drift minus a compound Poisson sum of
positive jumps: drift ``c``, jump intensity ``lam``, discount rate ``q``.
"""

import math
from dataclasses import dataclass

from .errors import NumericRangeError

__all__ = ["ProcessParams", "laplace_exponent", "phi"]

_PHI_TOL = 1e-13


@dataclass(frozen=True)
class ProcessParams:
    """Drift c > 0, jump intensity lam > 0, discount rate q >= 0."""

    c: float
    lam: float
    q: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValueError(f"drift c must be positive and finite, got {self.c!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"intensity lam must be positive and finite, got {self.lam!r}")
        if not (math.isfinite(self.q) and self.q >= 0):
            raise ValueError(f"discount q must be nonnegative and finite, got {self.q!r}")

    @property
    def rho(self):
        """(q + lam) / c, the rate constant of the kernel exponential."""
        return (self.q + self.lam) / self.c

    @property
    def lam_c(self):
        return self.lam / self.c


def laplace_exponent(params, jumps, beta):
    """psi(beta) = c*beta + lam * E[exp(-beta*xi) - 1] for beta >= 0.

    Closed-form families use their analytic transform; lattice atoms are
    summed and grid densities integrated by the trapezoidal rule on their own
    grid, so the error is commensurate with the convolution pipeline.
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    psi = params.c * beta + params.lam * jumps.laplace_minus_one(beta)
    if not math.isfinite(psi):
        raise NumericRangeError(f"psi({beta}) is not finite")
    return psi


def phi(params, jumps, q=None):
    """Largest root of psi(beta) = q on [0, inf).

    psi is convex with psi(0) = 0 and psi(beta) -> inf, so the largest root
    is isolated by doubling an upper bracket from 0 and bisecting.  In the
    critical case q = 0 with psi'(0+) >= 0 the supremum of the root set is 0.
    """
    if q is None:
        q = params.q
    if q < 0:
        raise ValueError("q must be >= 0")
    if q == 0.0 and params.c - params.lam * jumps.mean() >= 0.0:
        return 0.0

    psi = lambda b: laplace_exponent(params, jumps, b)
    hi = 1.0
    for _ in range(200):
        if psi(hi) > q:
            break
        hi *= 2.0
        if hi > 1e100:
            raise NumericRangeError("bracket expansion for phi(q) failed")
    else:  # pragma: no cover
        raise NumericRangeError("bracket expansion for phi(q) failed")

    lo = 0.0
    # bisection on the predicate psi(mid) > q converges to the largest root
    # even when psi dips below q between 0 and the bracket
    while hi - lo > _PHI_TOL:
        mid = 0.5 * (lo + hi)
        if psi(mid) > q:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
