"""NumPy implementations of the hot kernels.

These are the reference implementations; ``cpscale._kernels._core`` is a
compiled twin with identical signatures and semantics.  Every series kernel
returns ``(signed_sum, abs_sum)`` so callers can estimate how much
cancellation the alternating terms produced.
"""

import math

import numpy as np

BACKEND_NAME = "fallback"


def conv_table_lattice(pmf, max_order):
    """Self-convolution table of a lattice pmf given as a dense array by index.

    ``pmf[n]`` is the mass at lattice index ``n`` (index 0 must be 0).  Row
    ``k`` of the result holds the k-fold convolution truncated to the same
    index range; truncation is harmless below the cap because the support is
    nonnegative.
    """
    n_cap = pmf.shape[0] - 1
    out = np.zeros((max_order + 1, n_cap + 1))
    out[0, 0] = 1.0
    if max_order >= 1:
        out[1] = pmf
    for k in range(2, max_order + 1):
        out[k] = np.convolve(out[k - 1], pmf)[: n_cap + 1]
    return out


def lattice_series(masses, eps, x, rho, lam_c, shift, include_diag):
    """Shifted kernel series over a lattice convolution table.

    Computes ``sum_{k>=shift} sum_{n*eps <= x} masses[k, n] * g_{k-shift}(n*eps, x)``
    with ``g_j(s, x) = (lam_c^j / j!) exp(-rho (s-x)) (s-x)^j``.  Atoms at
    ``s == x`` enter only the ``j == 0`` term and are dropped when
    ``include_diag`` is false.  Returns ``(signed_sum, abs_sum)``.
    """
    kmax = masses.shape[0] - 1
    if kmax < shift:
        return 0.0, 0.0
    # snap guards against x sitting a few ulps below an intended lattice point
    n_top = int(math.floor(x / eps + 1e-9))
    n_top = min(n_top, masses.shape[1] - 1)
    if n_top < 0:
        return 0.0, 0.0
    n = np.arange(n_top + 1)
    u = x - n * eps
    on_diag = np.abs(u) <= 1e-12 * max(1.0, abs(x))
    u = np.where(on_diag, 0.0, u)
    ew = np.exp(rho * u)
    pw = np.ones(n_top + 1)  # (lam_c * u)^j / j!
    total = 0.0
    comp = 0.0
    abs_total = 0.0
    for j in range(kmax - shift + 1):
        row = masses[j + shift, : n_top + 1]
        contrib = ew * pw * row
        if j == 0 and not include_diag:
            contrib = np.where(on_diag, 0.0, contrib)
        a = float(np.sum(contrib))
        abs_total += a
        term = a if j % 2 == 0 else -a
        # Kahan step for the alternating j-sum
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if j < kmax - shift:
            pw = pw * (lam_c * u) / (j + 1)
    return total, abs_total


def lattice_prim_series(masses, eps, x, rho, lam_c):
    """Primitive-series kernel over a lattice convolution table.

    Computes ``sum_k sum_{n*eps < x} masses[k, n] (lam_c^k/k!) (-1)^k E_k(rho, x - n*eps)``
    where ``E_k(rho, T) = int_0^T exp(rho u) u^k du``; the scaled form
    ``E_k = T^{k+1} Ehat_k`` with the downward recurrence keeps all
    intermediates bounded by ``exp(rho T)``.
    """
    kmax = masses.shape[0] - 1
    n_top = int(math.floor(x / eps + 1e-9))
    n_top = min(n_top, masses.shape[1] - 1)
    total = 0.0
    comp = 0.0
    abs_total = 0.0
    for ni in range(n_top + 1):
        u = x - ni * eps
        if u <= 1e-12 * max(1.0, abs(x)):
            continue
        ehat = _ehat_all(rho, u, kmax)
        pw = u  # (lam_c*u)^k / k! * u at k=0
        for k in range(kmax + 1):
            m = masses[k, ni]
            if m != 0.0:
                a = m * pw * ehat[k]
                abs_total += a
                term = a if k % 2 == 0 else -a
                y = term - comp
                t = total + y
                comp = (t - total) - y
                total = t
            pw = pw * (lam_c * u) / (k + 1)
    return total, abs_total


def _ehat_all(rho, T, kmax):
    """``E_k(rho,T) / T^(k+1)`` for k = 0..kmax (series top, downward recurrence)."""
    z = rho * T
    term = 1.0
    s = 1.0 / (kmax + 1)
    m = 0
    while True:
        m += 1
        term *= z / m
        inc = term / (kmax + m + 1)
        s += inc
        if inc <= 1e-18 * s and m >= z:
            break
    out = np.empty(kmax + 1)
    out[kmax] = s
    ez = math.exp(z)
    for k in range(kmax, 0, -1):
        out[k - 1] = (ez - z * out[k]) / k
    return out


def recursion_build(mvals, yidx, n_intervals):
    """Piecewise-monomial coefficients of the interval recursion.

    Row ``j`` holds the coefficients (in the local variable ``t = xhat - j``)
    of the auxiliary function on ``[j, j+1]``; it is assembled from the
    antiderivatives of rows ``j - y`` and the continuity value at ``t = 0``.
    """
    coeffs = np.zeros((n_intervals, n_intervals + 1))
    coeffs[0, 0] = 1.0
    inv = 1.0 / np.arange(1, n_intervals + 1)
    for j in range(1, n_intervals):
        row = coeffs[j]
        row[0] = coeffs[j - 1, : j + 1].sum()
        for m, y in zip(mvals, yidx):
            jj = j - y
            if jj < 0:
                continue
            row[1 : jj + 2] -= m * coeffs[jj, : jj + 1] * inv[: jj + 1]
    return coeffs


def recursion_eval(coeffs, j, t, derivative=False):
    """Horner evaluation of recursion row ``j`` (or its derivative) at ``t``."""
    row = coeffs[j, : j + 1]
    v = 0.0
    if derivative:
        for i in range(row.shape[0] - 1, 0, -1):
            v = v * t + i * row[i]
    else:
        for i in range(row.shape[0] - 1, -1, -1):
            v = v * t + row[i]
    return v


def grid_series(dens, h, x, rho, lam_c, shift):
    """Shifted kernel series integrated against grid densities.

    ``dens[k]`` holds samples of the k-fold convolution density on nodes
    ``0, h, 2h, ...`` (row 0 is ignored: the point mass at zero is the
    caller's business).  Trapezoidal rule on whole cells plus a linearly
    interpolated partial cell at ``x``.  Returns ``(signed_sum, abs_sum)``.
    """
    kmax = dens.shape[0] - 1
    m = int(math.floor(x / h + 1e-12))
    m = min(m, dens.shape[1] - 1)
    if m < 0 or kmax < 1:
        return 0.0, 0.0
    s = np.arange(m + 1) * h
    u = x - s
    if m >= 1:
        w = np.full(m + 1, h)
        w[0] = 0.5 * h
        w[m] = 0.5 * h
    else:
        w = np.zeros(1)
    d = x - m * h
    fx_frac = 0.0
    if d > 1e-14 * max(1.0, x) and m + 1 < dens.shape[1]:
        w[m] += 0.5 * d
        fx_frac = d / h
    ew = np.exp(rho * u) * w
    pw = np.ones(m + 1)  # (lam_c * u)^j / j!, advanced alongside k
    j = 0
    total = 0.0
    comp = 0.0
    abs_total = 0.0
    k_lo = max(shift, 1)
    for k in range(k_lo, kmax + 1):
        jk = k - shift
        while j < jk:
            pw = pw * (lam_c * u) / (j + 1)
            j += 1
        row = dens[k, : m + 1]
        a = float(np.sum(ew * pw * row))
        if jk == 0 and fx_frac > 0.0:
            # partial-cell endpoint at s == x contributes only for j == 0
            fx = dens[k, m] * (1 - fx_frac) + dens[k, m + 1] * fx_frac
            a += 0.5 * d * fx
        abs_total += abs(a)
        term = a if jk % 2 == 0 else -a
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total, abs_total
