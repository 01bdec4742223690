"""Independent verification oracles for the scale-function evaluators.

Nothing here reuses the series representation: the Laplace check integrates
the evaluator against the defining transform identity, the Monte Carlo
estimators simulate the process path by path (event-driven, no time grid),
and the zero-discount cross-check evaluates the integrated-tail series.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special as sp_special

from .errors import DomainError
from .jumps import Dirac, Gamma
from .processes import laplace_exponent, phi
from .scale import scale_w
from .special import exp_poly_integral_vec, irwin_hall_cdf

__all__ = [
    "MCEstimate",
    "PathConfig",
    "mc_two_sided_exit",
    "mc_expectation_w",
    "mc_expectation_derivatives_and_primitive",
    "laplace_check",
    "pk_zero_scale",
    "recursion_identity_residual",
]

_BATCH = 1 << 20


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo output; bitwise reproducible for fixed (seed, n_paths, workers)."""

    value: float
    stderr: float
    n_paths: int
    seed: int


@dataclass(frozen=True)
class PathConfig:
    """Process and jump law for the simulators.

    The horizon is fixed by the oracle: the exit estimator runs each path
    until it leaves (0, a) (no time grid, crossing times are exact), the
    expectation estimators use the unit-time representation.
    """

    params: object
    jumps: object


def _worker_rng(seed, worker):
    # counter-based generator keyed on (seed, worker index): deterministic
    # substreams under any parallel fan-out
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(worker)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _worker_counts(n_paths, n_workers):
    base = n_paths // n_workers
    counts = [base + (1 if w < n_paths % n_workers else 0) for w in range(n_workers)]
    return counts


def _finalize(s1, s2, n, seed):
    mean = s1 / n
    var = max(s2 - n * mean * mean, 0.0) / max(n - 1, 1)
    return MCEstimate(value=mean, stderr=math.sqrt(var / n), n_paths=n, seed=seed)


def mc_two_sided_exit(cfg, x, a, q=None, *, n_paths, seed, n_workers=1):
    """Estimate E_x[exp(-q * T_up) ; up-exit at a before passage below 0].

    Between jumps the path is a line of slope c, so the upcrossing time of
    ``a`` is compared analytically with the next exponential jump epoch;
    ruin is checked after each jump.  The target value is W(x) / W(a).
    """
    p = cfg.params
    if q is None:
        q = p.q
    if not (0.0 < x < a):
        raise ValueError("need 0 < x < a")
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    c, lam = p.c, p.lam
    s1 = 0.0
    s2 = 0.0
    for w, m in enumerate(_worker_counts(n_paths, n_workers)):
        if m == 0:
            continue
        rng = _worker_rng(seed, w)
        pos = np.full(m, float(x))
        tacc = np.zeros(m)
        vals = np.zeros(m)
        alive = np.ones(m, dtype=bool)
        rounds = 0
        while alive.any():
            idx = np.nonzero(alive)[0]
            dt = rng.standard_exponential(idx.size) / lam
            t_hit = (a - pos[idx]) / c
            up = t_hit <= dt
            hit = idx[up]
            vals[hit] = np.exp(-q * (tacc[hit] + t_hit[up]))
            alive[hit] = False
            jmp = idx[~up]
            if jmp.size:
                xi = cfg.jumps.sample(rng, jmp.size)
                newpos = pos[jmp] + c * dt[~up] - xi
                tacc[jmp] += dt[~up]
                pos[jmp] = newpos
                dead = newpos <= 0.0
                alive[jmp[dead]] = False
            rounds += 1
            if rounds > 1_000_000:  # pragma: no cover
                raise RuntimeError("exit simulation failed to terminate")
        s1 += float(vals.sum())
        s2 += float(np.dot(vals, vals))
    return _finalize(s1, s2, n_paths, seed)


def _unit_time_batches(cfg, x, n_paths, seed, n_workers, functional):
    """Simulate (N_1, sum of jumps) in fixed-size batches and average ``functional``."""
    p = cfg.params
    s1 = 0.0
    s2 = 0.0
    for w, m in enumerate(_worker_counts(n_paths, n_workers)):
        rng = _worker_rng(seed, w)
        done = 0
        while done < m:
            b = min(_BATCH, m - done)
            N = rng.poisson(p.lam, b)
            total = int(N.sum())
            if total:
                xi = cfg.jumps.sample(rng, total)
                csum = np.concatenate(([0.0], np.cumsum(xi)))
                ends = np.cumsum(N)
                S = csum[ends] - csum[ends - N]
            else:
                S = np.zeros(b)
            L = x + p.c - S
            v = functional(L, N)
            s1 += float(v.sum())
            s2 += float(np.dot(v, v))
            done += b
    return _finalize(s1, s2, n_paths, seed)


def mc_expectation_w(cfg, x, *, n_paths, seed, n_workers=1):
    """Unit-time expectation representation of W(x).

    Averages ``(exp(-q)/c) exp(rho L_1) (1 - L_1/c)^{N_1}`` over paths with
    ``L_1 >= c``; the integrand grows like exp(rho x), so the reported
    stderr must be respected when comparing.
    """
    if x < 0:
        raise ValueError("scale functions live on [0, inf)")
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    p = cfg.params
    rho, c, q = p.rho, p.c, p.q
    pref = math.exp(-q) / c

    def functional(L, N):
        u = 1.0 - L / c  # <= 0 on the indicator event
        parity = np.where(N % 2 == 0, 1.0, -1.0)
        powu = parity * np.abs(u) ** N
        return np.where(L >= c, pref * np.exp(rho * L) * powu, 0.0)

    return _unit_time_batches(cfg, x, n_paths, seed, n_workers, functional)


def mc_expectation_derivatives_and_primitive(cfg, x, which, *, n_paths, seed, n_workers=1):
    """Unit-time expectation representations of dW+ / dW- / the primitive."""
    if which not in ("plus", "minus", "primitive"):
        raise ValueError("which must be 'plus', 'minus' or 'primitive'")
    if x < 0 or (which == "minus" and x <= 0):
        raise ValueError("x out of range for the requested quantity")
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    p = cfg.params
    rho, c, q, lam = p.rho, p.c, p.q, p.lam

    if which == "primitive":
        pref = math.exp(lam)

        def functional(L, N):
            ind = L > c
            T = np.where(ind, L / c - 1.0, 0.0)
            out = np.zeros_like(L)
            for n in np.unique(N[ind]):
                mask = ind & (N == n)
                e = exp_poly_integral_vec(q + lam, T[mask], int(n))
                out[mask] = pref * (1.0 if n % 2 == 0 else -1.0) * e
            return out

    else:
        pref = math.exp(-q) / c**2
        strict = which == "minus"

        def functional(L, N):
            ind = (L > c) if strict else (L >= c)
            u = 1.0 - L / c
            au = np.abs(u)
            parity = np.where(N % 2 == 0, 1.0, -1.0)
            first = (q + lam) * parity * au**N
            expo = np.maximum(N - 1, 0)
            second = N * np.where(expo % 2 == 0, 1.0, -1.0) * au**expo
            return np.where(ind, pref * np.exp(rho * L) * (first - second), 0.0)

    return _unit_time_batches(cfg, x, n_paths, seed, n_workers, functional)


def laplace_check(ev, beta, x_max=None, *, margin=0.5, quad_tol=1e-9, tail_tol=1e-12):
    """Residual of the defining identity: |int e^(-beta x) W(x) dx * (psi(beta)-q) - 1|.

    Valid for beta above the right-inverse point; ``x_max`` defaults to the
    point where the integrand tail bound drops below ``tail_tol`` (the crude
    exp(rho x)/c envelope when beta > rho, otherwise an adaptive walk using
    the evaluator itself).
    """
    p = ev.params
    phi_q = phi(p, ev.jumps, p.q)
    if beta <= phi_q + margin:
        raise DomainError(
            f"beta={beta} must exceed phi(q)+margin = {phi_q + margin}; the transform "
            "diverges at or below phi(q)"
        )
    psi_b = laplace_exponent(p, ev.jumps, beta)
    if x_max is None:
        x_max = _transform_cutoff(ev, beta, phi_q, tail_tol)
    val = _transform_integral(ev, beta, x_max, quad_tol)
    return abs(val * (psi_b - p.q) - 1.0)


def _transform_cutoff(ev, beta, phi_q, tail_tol):
    p = ev.params
    if beta > p.rho + 0.1:
        # W(x) <= exp(rho x)/c makes the tail integral explicit
        return math.log(1.0 / (tail_tol * (beta - p.rho) * p.c)) / (beta - p.rho)
    decay = beta - phi_q
    x = 4.0 / decay
    for _ in range(200):
        w = scale_w(ev, x)
        if w * math.exp(-beta * x) / decay < 0.5 * tail_tol:
            return x
        x *= 1.3
        if p.rho * x > 650.0:
            return 650.0 / p.rho
    return x  # pragma: no cover


def _transform_integral(ev, beta, x_max, quad_tol):
    f = lambda t: math.exp(-beta * t) * scale_w(ev, t)
    if ev.jumps.kind == "lattice":
        # W is smooth inside lattice cells; integrate cell by cell
        eps = ev.jumps.step
        edges = np.arange(0.0, x_max, eps)
        edges = np.append(edges, x_max)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            v, _ = integrate.quad(f, lo, hi, epsabs=quad_tol, epsrel=quad_tol, limit=100)
            total += v
        return total
    v, _ = integrate.quad(f, 0.0, x_max, epsabs=quad_tol, epsrel=quad_tol, limit=400)
    return v


def pk_zero_scale(cfg, x):
    """Zero-discount scale function through the integrated-tail series.

    ``W(x) = (1/c) sum_k (lam mu / c)^k PiI^{*k}(x)`` with the integrated
    tail ``PiI(dt) = Pi((t, inf))/mu dt``; the stated validity condition
    ``lam mu > c`` is enforced, as is q = 0.
    """
    p = cfg.params
    jumps = cfg.jumps
    if p.q != 0.0:
        raise DomainError("the integrated-tail series defines the q = 0 scale function only")
    mu = jumps.mean()
    if not p.lam * mu > p.c:
        raise DomainError(f"series validity needs lam*mean > c (got {p.lam * mu} <= {p.c})")
    if x < 0:
        raise ValueError("x must be >= 0")
    if x == 0.0:
        return 1.0 / p.c
    theta = p.lam * mu / p.c
    kmax = _pk_orders(p, x)
    cdfs = _integrated_tail_cdfs(jumps, mu, x, kmax)
    total = 0.0
    # smallest-first accumulation: terms are positive and grow then decay
    for k in range(kmax, -1, -1):
        total += theta**k * cdfs[k]
    return total / p.c


def _pk_orders(p, x):
    # (lam mu/c)^k PiI^{*k}(x) <= (lam x / c)^k / k! since the tail density
    # is bounded by 1/mu
    theta = p.lam * x / p.c
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= theta / k
        if term < 1e-10 and k > theta:
            return k
        if k > 100000:  # pragma: no cover
            raise ArithmeticError("pk series order search failed")


def _integrated_tail_cdfs(jumps, mu, x, kmax):
    """[PiI^{*k}(x) for k = 0..kmax] for the integrated-tail law."""
    if isinstance(jumps, Gamma) and jumps.shape == 1.0:
        # exponential jumps: the integrated tail is the same exponential
        return [1.0] + [float(sp_special.gammainc(k, jumps.rate * x)) for k in range(1, kmax + 1)]
    if isinstance(jumps, Dirac):
        # integrated tail is Uniform(0, a]
        return [irwin_hall_cdf(k, x / jumps.a) for k in range(kmax + 1)]
    # generic route: tail density on a grid over [0, x]
    n = 4096
    h = x / n
    t = h * np.arange(n + 1)
    dens = np.array([(1.0 - jumps.cdf(ti)) / mu for ti in t])
    out = [1.0]
    cur = dens
    for k in range(1, kmax + 1):
        w = np.full(n + 1, h)
        w[0] = w[-1] = 0.5 * h
        out.append(float(np.dot(w, cur)))
        if k < kmax:
            from scipy.signal import fftconvolve

            cur = np.maximum(fftconvolve(cur, dens)[: n + 1] * h, 0.0)
    return out


def recursion_identity_residual(ev, x, gl_order=24):
    """Plug the evaluator into the interval recursion and return the defect.

    In the unit-step rescaling the identity reads
    ``w(x) = w(floor x) - sum_y m_y int_{floor x}^x w(z - y) dz`` with
    ``w(z) = c W(eps z) exp(-rho eps z)``; by the uniqueness clause any
    function satisfying it (with w = 0 on negatives, w(0) = 1) is the scale
    function, so a small residual certifies the evaluator.
    """
    if ev.jumps.kind != "lattice":
        raise TypeError("the recursion identity applies to lattice-supported jumps")
    p = ev.params
    eps = ev.jumps.step
    rho = p.rho

    def w(z):
        if z < 0:
            return 0.0
        return p.c * scale_w(ev, eps * z) * math.exp(-rho * eps * z)

    xhat = x / eps
    j0 = math.floor(xhat + 1e-12)
    t1 = xhat - j0
    if t1 <= 0:
        return 0.0
    n_cap = int(j0) + 1
    dense = ev.jumps.masses_dense(n_cap)
    yidx = np.nonzero(dense)[0]
    mvals = (eps * p.lam / p.c) * dense[yidx] * np.exp(-rho * eps * yidx)
    nodes, weights = np.polynomial.legendre.leggauss(gl_order)
    zs = j0 + 0.5 * t1 * (nodes + 1.0)
    acc = 0.0
    for mv, y in zip(mvals, yidx):
        vals = np.array([w(z - y) for z in zs])
        acc += mv * 0.5 * t1 * float(np.dot(weights, vals))
    return abs(w(xhat) - w(float(j0)) + acc)
