"""Small numerical building blocks used by several modules.

Everything here is expressed through series with nonnegative terms (or a
contraction in the recurrence direction actually used), so the routines stay
accurate for the argument ranges the evaluators produce.
"""

import math

import numpy as np

__all__ = [
    "exp_poly_integral_scaled",
    "exp_poly_integrals_scaled",
    "exp_poly_integral_vec",
    "kummer_m",
    "irwin_hall_cdf",
]


def exp_poly_integral_scaled(rho, T, k, tol=1e-18):
    """Return ``E_k(rho, T) / T**(k+1)`` where ``E_k = int_0^T exp(rho*u) u^k du``.

    Uses the everywhere-positive expansion
    ``sum_m (rho*T)^m / (m! (k+m+1))`` which is bounded by ``exp(rho*T)``;
    the caller reattaches the ``T**(k+1)`` factor (in log space if needed).
    """
    if T == 0.0:
        return 1.0 / (k + 1)
    z = rho * T
    term = 1.0
    s = 1.0 / (k + 1)
    m = 0
    while True:
        m += 1
        term *= z / m
        inc = term / (k + m + 1)
        s += inc
        if inc <= tol * s and m >= z:
            return s


def exp_poly_integrals_scaled(rho, T, kmax):
    """All scaled integrals ``E_k(rho,T)/T**(k+1)`` for ``k = 0..kmax``.

    The top order is summed directly; lower orders follow from the downward
    recurrence ``Ehat_{k-1} = (exp(rho*T) - rho*T*Ehat_k) / k`` which damps
    errors by ``1/k`` per step.
    """
    out = np.empty(kmax + 1)
    out[kmax] = exp_poly_integral_scaled(rho, T, kmax)
    if kmax == 0:
        return out
    z = rho * T
    ez = math.exp(z)
    for k in range(kmax, 0, -1):
        out[k - 1] = (ez - z * out[k]) / k
    return out


def exp_poly_integral_vec(rho, T, k, tol=1e-18):
    """Vectorized ``E_k(rho, T)`` over an array of upper limits ``T >= 0``."""
    T = np.asarray(T, dtype=float)
    z = rho * T
    term = np.ones_like(T)
    s = np.full_like(T, 1.0 / (k + 1))
    m = 0
    zmax = float(z.max(initial=0.0))
    while True:
        m += 1
        term *= z / m
        s += term / (k + m + 1)
        if m >= zmax and float(term.max(initial=0.0)) <= tol * (k + m + 1):
            break
        if m > 100000:  # pragma: no cover - rho*T far beyond supported range
            raise ArithmeticError("exp_poly_integral_vec did not converge")
    return s * T ** (k + 1)


def kummer_m(a, b, z, tol=1e-17):
    """Kummer's confluent hypergeometric ``M(a, b, z)`` for ``a, b > 0, z >= 0``.

    All series terms are positive, so plain accumulation is stable.
    """
    term = 1.0
    s = 1.0
    m = 0
    while True:
        term *= (a + m) * z / ((b + m) * (m + 1))
        s += term
        m += 1
        if term <= tol * s and m >= z:
            return s
        if m > 100000:  # pragma: no cover
            raise ArithmeticError("kummer_m did not converge")


def irwin_hall_cdf(k, t):
    """CDF at ``t`` of the sum of ``k`` independent Uniform(0, 1] variables."""
    if k == 0:
        return 1.0 if t >= 0.0 else 0.0
    if t <= 0.0:
        return 0.0
    if t >= k:
        return 1.0
    s = 0.0
    for j in range(int(math.floor(t)) + 1):
        s += (-1.0) ** j * math.comb(k, j) * (t - j) ** k
    return s / math.factorial(k)
