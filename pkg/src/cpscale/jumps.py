"""Jump-size distributions, their CDFs, and cached convolution powers.

Three representations are supported:

* lattice-supported distributions (explicit ``Lattice`` atoms plus the
  closed-form families ``Dirac``, ``Geometric``, ``ZeroTruncatedPoisson``),
* absolutely continuous distributions sampled on a uniform grid
  (``GridDensity``),
* the ``Gamma`` family, whose convolution powers stay inside the family.

Mixed atomic/continuous jump laws and mass at zero are rejected at
construction.
"""

import math
import numbers
from dataclasses import dataclass

import numpy as np
from scipy import signal, special

from . import _kernels
from .errors import ResourceError

__all__ = [
    "JumpDistribution",
    "Dirac",
    "Geometric",
    "ZeroTruncatedPoisson",
    "Gamma",
    "Lattice",
    "GridDensity",
    "ConvolutionTable",
    "convolve_up_to",
    "conv_cdf",
    "ztp_z",
    "ztp_z_table",
    "jumps_from_descriptor",
    "jumps_to_descriptor",
    "discretize_to_lattice",
]

_trapz = np.trapezoid if hasattr(np, "trapezoid") else np.trapz

# direct integer-index convolution below this size, FFT (with a clamp for
# ringing down to -1e-15) above it
_FFT_THRESHOLD = 2**14
_MEMORY_BUDGET_BYTES = 1_600_000_000
_SNAP = 1e-9


class JumpDistribution:
    """Common interface of all jump-size laws (support in (0, inf))."""

    kind = None  # "lattice" | "grid" | "gamma"

    def mean(self):
        raise NotImplementedError

    def laplace_minus_one(self, beta):
        """``E[exp(-beta * xi)] - 1``, computed without cancellation at beta=0."""
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def min_support(self):
        """Largest m with no jump mass below m (0 for distributions reaching 0)."""
        raise NotImplementedError

    def atom_mass(self, x):
        """Point mass at x; zero for absolutely continuous laws."""
        return 0.0

    def sample(self, rng, size):
        raise NotImplementedError

    def descriptor(self):
        raise NotImplementedError


def _check_positive(name, value):
    if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


# ---------------------------------------------------------------------------
# lattice-supported laws


class _LatticeLike(JumpDistribution):
    """Shared machinery for laws supported on step * {1, 2, ...}."""

    kind = "lattice"
    step = None

    def masses_dense(self, n_cap):
        """Masses at indices 0..n_cap (index 0 is always 0)."""
        raise NotImplementedError

    def conv_rows_closed(self, max_order, n_cap):
        """Analytic convolution rows, or None when only generic convolution applies."""
        return None

    def index_cap_for(self, x):
        """Smallest index cap so masses above it cannot matter below x."""
        return int(math.floor(x / self.step + _SNAP)) + 1

    def min_index(self):
        raise NotImplementedError

    def min_support(self):
        return self.step * self.min_index()

    def atom_mass(self, x):
        idx = int(round(x / self.step))
        if idx >= 1 and abs(x - idx * self.step) <= _SNAP * max(self.step, abs(x)):
            return self._mass_at_index(idx)
        return 0.0

    def _mass_at_index(self, idx):
        raise NotImplementedError


@dataclass(frozen=True)
class Dirac(_LatticeLike):
    """All jumps have the same size ``a``."""

    a: float

    def __post_init__(self):
        _check_positive("a", self.a)

    @property
    def step(self):
        return self.a

    def mean(self):
        return self.a

    def laplace_minus_one(self, beta):
        return math.expm1(-beta * self.a)

    def cdf(self, x):
        return 1.0 if x >= self.a * (1 - _SNAP) else 0.0

    def min_index(self):
        return 1

    def _mass_at_index(self, idx):
        return 1.0 if idx == 1 else 0.0

    def masses_dense(self, n_cap):
        out = np.zeros(n_cap + 1)
        if n_cap >= 1:
            out[1] = 1.0
        return out

    def conv_rows_closed(self, max_order, n_cap):
        rows = np.zeros((max_order + 1, n_cap + 1))
        for k in range(min(max_order, n_cap) + 1):
            rows[k, k] = 1.0
        return rows

    def sample(self, rng, size):
        return np.full(size, self.a)

    def descriptor(self):
        return {"type": "dirac", "a": self.a}


@dataclass(frozen=True)
class Geometric(_LatticeLike):
    """Geometric law on {1, 2, ...}: P(xi = n) = (1-p)^(n-1) p."""

    p: float
    step = 1.0

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {self.p!r}")

    def mean(self):
        return 1.0 / self.p

    def laplace_minus_one(self, beta):
        e = math.exp(-beta)
        return self.p * e / (1.0 - (1.0 - self.p) * e) - 1.0

    def cdf(self, x):
        n = int(math.floor(x + _SNAP))
        if n < 1:
            return 0.0
        return -math.expm1(n * math.log1p(-self.p))

    def min_index(self):
        return 1

    def _mass_at_index(self, idx):
        return (1.0 - self.p) ** (idx - 1) * self.p

    def masses_dense(self, n_cap):
        out = np.zeros(n_cap + 1)
        n = np.arange(1, n_cap + 1)
        out[1:] = self.p * (1.0 - self.p) ** (n - 1)
        return out

    def conv_rows_closed(self, max_order, n_cap):
        # k-fold convolution is negative binomial: C(n-1, n-k)(1-p)^(n-k) p^k at n >= k
        rows = np.zeros((max_order + 1, n_cap + 1))
        rows[0, 0] = 1.0
        n = np.arange(n_cap + 1)
        for k in range(1, max_order + 1):
            m = n[k:] - k
            from scipy.stats import nbinom

            rows[k, k:] = nbinom.pmf(m, k, self.p)
        return rows

    def sample(self, rng, size):
        u = rng.random(size)
        n = np.ceil(np.log1p(-u) / math.log1p(-self.p))
        return np.maximum(n, 1.0)

    def descriptor(self):
        return {"type": "geometric", "p": self.p}


def ztp_z(n, k, mu):
    """``z(n, k)``: probability that k independent Poisson(mu) variables are all
    positive and sum to n (so the zero-truncated k-fold pmf is
    ``z(n,k) / (1 - exp(-mu))^k``)."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    return float(ztp_z_table(n, k, mu)[n, k])


def ztp_z_table(n_max, k_max, mu):
    """Table of z(n, k) for 0 <= n <= n_max, 0 <= k <= k_max."""
    _check_positive("mu", mu)
    z = np.zeros((n_max + 1, k_max + 1))
    z[0, 0] = 1.0
    n = np.arange(n_max + 1)
    lgn = special.gammaln(n + 1)
    for k in range(1, k_max + 1):
        # P(sum of k untruncated Poissons = n), minus the terms where some
        # subset of the variables is zero
        with np.errstate(divide="ignore"):
            logp = n * math.log(k * mu) - k * mu - lgn
        pk = np.exp(logp)
        acc = pk
        for ell in range(1, k):
            acc = acc - math.comb(k, ell) * math.exp(-ell * mu) * z[:, k - ell]
        acc[:k] = 0.0  # z(n, k) = 0 for n < k
        z[:, k] = np.maximum(acc, 0.0)
    return z


@dataclass(frozen=True)
class ZeroTruncatedPoisson(_LatticeLike):
    """Poisson(mu) conditioned to be >= 1."""

    mu: float
    step = 1.0

    def __post_init__(self):
        _check_positive("mu", self.mu)

    def mean(self):
        return self.mu / -math.expm1(-self.mu)

    def laplace_minus_one(self, beta):
        em = math.exp(-self.mu)
        num = math.exp(self.mu * math.expm1(-beta)) - em
        return num / (1.0 - em) - 1.0

    def cdf(self, x):
        n = int(math.floor(x + _SNAP))
        if n < 1:
            return 0.0
        from scipy.stats import poisson

        return (poisson.cdf(n, self.mu) - math.exp(-self.mu)) / -math.expm1(-self.mu)

    def min_index(self):
        return 1

    def _mass_at_index(self, idx):
        return math.exp(
            idx * math.log(self.mu) - self.mu - special.gammaln(idx + 1)
        ) / -math.expm1(-self.mu)

    def masses_dense(self, n_cap):
        out = np.zeros(n_cap + 1)
        n = np.arange(1, n_cap + 1)
        logp = n * math.log(self.mu) - self.mu - special.gammaln(n + 1)
        out[1:] = np.exp(logp) / -math.expm1(-self.mu)
        return out

    def conv_rows_closed(self, max_order, n_cap):
        z = ztp_z_table(n_cap, max_order, self.mu)
        scale = (-math.expm1(-self.mu)) ** -np.arange(max_order + 1)
        return (z * scale).T.copy()

    def sample(self, rng, size):
        # inversion on the pmf; the support walk is bounded by the far quantile
        u = rng.random(size)
        out = np.zeros(size, dtype=float)
        pending = np.ones(size, dtype=bool)
        n = 0
        cum = 0.0
        p_n = 0.0
        norm = -math.expm1(-self.mu)
        while pending.any():
            n += 1
            p_n = math.exp(n * math.log(self.mu) - self.mu - special.gammaln(n + 1)) / norm
            cum += p_n
            hit = pending & (u <= cum)
            out[hit] = n
            pending &= ~hit
            if n > 40 + 20 * self.mu:
                out[pending] = n  # beyond the 1e-16 quantile
                break
        return out

    def descriptor(self):
        return {"type": "ztp", "mu": self.mu}


class Lattice(_LatticeLike):
    """Explicit atoms on step * {1, 2, ...}; masses must sum to 1 (tol 1e-12)."""

    def __init__(self, step, atoms):
        _check_positive("step", step)
        if not atoms:
            raise ValueError("atoms must be nonempty")
        idx = []
        mass = []
        for key, p in atoms.items():
            n = int(key)
            if n != float(key) or n < 1:
                raise ValueError(f"atom index {key!r} is not a positive integer")
            if not (p > 0 and math.isfinite(p)):
                raise ValueError(f"atom mass at index {n} must be positive, got {p!r}")
            idx.append(n)
            mass.append(float(p))
        order = np.argsort(idx)
        self.indices = np.asarray(idx, dtype=np.int64)[order]
        self.masses = np.asarray(mass, dtype=float)[order]
        if np.unique(self.indices).size != self.indices.size:
            raise ValueError("duplicate atom indices")
        total = self.masses.sum()
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"atom masses sum to {total!r}, not 1 within 1e-12")
        self._step = float(step)
        self._cum = np.cumsum(self.masses)

    @property
    def step(self):
        return self._step

    def mean(self):
        return float(self._step * np.dot(self.indices, self.masses))

    def laplace_minus_one(self, beta):
        return float(np.dot(self.masses, np.expm1(-beta * self._step * self.indices)))

    def cdf(self, x):
        n = math.floor(x / self._step + _SNAP)
        return float(self.masses[self.indices <= n].sum())

    def min_index(self):
        return int(self.indices[0])

    def _mass_at_index(self, idx):
        pos = np.searchsorted(self.indices, idx)
        if pos < self.indices.size and self.indices[pos] == idx:
            return float(self.masses[pos])
        return 0.0

    def masses_dense(self, n_cap):
        out = np.zeros(n_cap + 1)
        keep = self.indices <= n_cap
        out[self.indices[keep]] = self.masses[keep]
        return out

    def sample(self, rng, size):
        u = rng.random(size)
        pos = np.searchsorted(self._cum, u, side="left")
        pos = np.minimum(pos, self.indices.size - 1)
        return self._step * self.indices[pos].astype(float)

    def descriptor(self):
        return {
            "type": "lattice",
            "step": self._step,
            "atoms": {str(int(n)): float(p) for n, p in zip(self.indices, self.masses)},
        }


# ---------------------------------------------------------------------------
# continuous laws


@dataclass(frozen=True)
class Gamma(JumpDistribution):
    """Gamma(shape, rate) jumps; convolution powers are Gamma(k*shape, rate)."""

    shape: float
    rate: float
    kind = "gamma"

    def __post_init__(self):
        _check_positive("shape", self.shape)
        _check_positive("rate", self.rate)

    def mean(self):
        return self.shape / self.rate

    def laplace_minus_one(self, beta):
        return math.expm1(-self.shape * math.log1p(beta / self.rate))

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return float(special.gammainc(self.shape, self.rate * x))

    def min_support(self):
        return 0.0

    def density(self, s):
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        pos = s > 0
        a, b = self.shape, self.rate
        out[pos] = np.exp(
            a * math.log(b) - special.gammaln(a) + (a - 1) * np.log(s[pos]) - b * s[pos]
        )
        return out

    def sample(self, rng, size):
        return rng.gamma(self.shape, 1.0 / self.rate, size)

    def descriptor(self):
        return {"type": "gamma", "shape": self.shape, "rate": self.rate}


class GridDensity(JumpDistribution):
    """Density sampled on nodes h, 2h, ..., n*h (support in (0, n*h]).

    The stored array gains a zero node at the origin; values are renormalized
    at construction so the trapezoidal integral is exactly 1.

    ``smoothness`` declares how many continuous derivatives the underlying
    density has on (0, inf) away from ``singular_points`` (None: existence
    only, nothing declared).
    """

    kind = "grid"

    def __init__(self, spacing, values, smoothness=None, singular_points=()):
        _check_positive("spacing", spacing)
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("values must be a 1-D sequence with at least 2 samples")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("density samples must be finite and nonnegative")
        self.h = float(spacing)
        self.values = np.concatenate(([0.0], vals))
        total = float(_trapz(self.values, dx=self.h))
        if not total > 0:
            raise ValueError("density integrates to zero")
        self.values /= total
        self.smoothness = smoothness
        self.singular_points = tuple(singular_points)
        self._cum = _cumtrapz(self.values, self.h)
        self._nodes = self.h * np.arange(self.values.size)

    def mean(self):
        return float(_trapz(self._nodes * self.values, dx=self.h))

    def laplace_minus_one(self, beta):
        return float(_trapz(np.expm1(-beta * self._nodes) * self.values, dx=self.h))

    def cdf(self, x):
        if x <= 0:
            return 0.0
        if x >= self._nodes[-1]:
            return float(self._cum[-1])
        return float(np.interp(x, self._nodes, self._cum))

    def min_support(self):
        nz = np.nonzero(self.values)[0]
        if nz.size == 0:
            return 0.0
        return self.h * max(0, int(nz[0]) - 1)

    def sample(self, rng, size):
        # inverse-CDF interpolation on the grid
        u = rng.random(size) * self._cum[-1]
        return np.interp(u, self._cum, self._nodes)

    def descriptor(self):
        d = {"type": "grid", "spacing": self.h, "values": [float(v) for v in self.values[1:]]}
        if self.smoothness is not None:
            d["smoothness"] = self.smoothness
        if self.singular_points:
            d["singular_points"] = list(self.singular_points)
        return d


def _cumtrapz(vals, h):
    out = np.zeros_like(vals)
    out[1:] = np.cumsum(0.5 * h * (vals[1:] + vals[:-1]))
    return out


# ---------------------------------------------------------------------------
# convolution tables


class ConvolutionTable:
    """Cached convolution powers of a jump distribution up to ``max_order``.

    Entry 0 is the unit mass at the origin.  Lattice entries are dense mass
    arrays by index; grid entries are density samples on the shared grid
    (values beyond the grid are tracked as ``tail_mass`` and never needed for
    evaluation below the cap); Gamma entries stay analytic.
    """

    def __init__(self, base, max_order, *, x_cap=None, method="auto"):
        if max_order < 0:
            raise ValueError("max_order must be >= 0")
        self.base = base
        self.max_order = int(max_order)
        self.kind = base.kind
        if base.kind == "gamma":
            self.x_cap = math.inf
        elif base.kind == "lattice":
            self._build_lattice(base, x_cap, method)
        elif base.kind == "grid":
            self._build_grid(base, x_cap)
        else:  # pragma: no cover
            raise TypeError(f"unknown jump distribution kind {base.kind!r}")

    def _build_lattice(self, base, x_cap, method):
        eps = base.step
        if x_cap is None:
            n_cap = _default_lattice_cap(base, self.max_order)
        else:
            n_cap = int(math.floor(x_cap / eps + _SNAP)) + 1
        need = (self.max_order + 1) * (n_cap + 1) * 8
        if need > _MEMORY_BUDGET_BYTES:
            raise ResourceError(
                f"lattice table needs {need} bytes (budget {_MEMORY_BUDGET_BYTES})",
                required_bytes=need,
                budget_bytes=_MEMORY_BUDGET_BYTES,
            )
        rows = None
        if method in ("auto", "closed"):
            rows = base.conv_rows_closed(self.max_order, n_cap)
        if rows is None:
            if method == "closed":
                raise ValueError(f"{type(base).__name__} has no closed-form convolutions")
            pmf = base.masses_dense(n_cap)
            if pmf.size > _FFT_THRESHOLD:
                rows = _conv_table_fft(pmf, self.max_order)
            else:
                rows = _kernels.conv_table_lattice(pmf, self.max_order)
        self.eps = eps
        self.masses = rows
        self.cum_masses = np.cumsum(rows, axis=1)
        self.x_cap = eps * (n_cap + 0.5)

    def _build_grid(self, base, x_cap):
        h = base.h
        vals = base.values
        if x_cap is not None and x_cap > h * (vals.size - 1):
            extra = int(math.ceil(x_cap / h)) + 2 - vals.size
            vals = np.concatenate((vals, np.zeros(extra)))
        need = (self.max_order + 1) * vals.size * 8
        if need > _MEMORY_BUDGET_BYTES:
            raise ResourceError(
                f"grid table needs {need} bytes (budget {_MEMORY_BUDGET_BYTES})",
                required_bytes=need,
                budget_bytes=_MEMORY_BUDGET_BYTES,
            )
        dens = np.zeros((self.max_order + 1, vals.size))
        if self.max_order >= 1:
            dens[1] = vals
        for k in range(2, self.max_order + 1):
            full = signal.fftconvolve(dens[k - 1], vals) * h
            # clamp FFT ringing; anything below -1e-15 would be a real defect
            dens[k] = np.maximum(full[: vals.size], 0.0)
        self.h = h
        self.dens = dens
        self.cum_dens = np.stack([_cumtrapz(dens[k], h) for k in range(self.max_order + 1)])
        self.tail_mass = 1.0 - self.cum_dens[:, -1]
        self.tail_mass[0] = 0.0
        self.x_cap = h * (vals.size - 1)

    def covers(self, x, order):
        return order <= self.max_order and x <= self.x_cap

    def total_mass(self, k):
        """In-table mass of entry k (lattice: exact sum; grid: trapezoid)."""
        if self.kind == "lattice":
            return float(self.cum_masses[k, -1])
        if self.kind == "grid":
            return float(self.cum_dens[k, -1]) if k >= 1 else 1.0
        return 1.0

    def cdf(self, k, x):
        """Right-continuous CDF of the k-fold convolution at x."""
        if not 0 <= k <= self.max_order:
            raise ValueError(f"order {k} outside table (max {self.max_order})")
        if x < 0:
            raise ValueError("x must be >= 0")
        if k == 0:
            return 1.0
        if self.kind == "gamma":
            return float(special.gammainc(k * self.base.shape, self.base.rate * x))
        if self.kind == "lattice":
            n = int(math.floor(x / self.eps + _SNAP))
            if n < 0:
                return 0.0
            n = min(n, self.cum_masses.shape[1] - 1)
            return float(self.cum_masses[k, n])
        nodes = self.h * np.arange(self.cum_dens.shape[1])
        if x >= nodes[-1]:
            return float(self.cum_dens[k, -1])
        return float(np.interp(x, nodes, self.cum_dens[k]))


def _conv_table_fft(pmf, max_order):
    n_cap = pmf.shape[0] - 1
    out = np.zeros((max_order + 1, n_cap + 1))
    out[0, 0] = 1.0
    if max_order >= 1:
        out[1] = pmf
    for k in range(2, max_order + 1):
        full = signal.fftconvolve(out[k - 1], pmf)
        out[k] = np.maximum(full[: n_cap + 1], 0.0)
    return out


def _default_lattice_cap(base, max_order):
    if isinstance(base, (Lattice, Dirac)):
        top = base.indices[-1] if isinstance(base, Lattice) else 1
        return int(top) * max(max_order, 1)
    if isinstance(base, Geometric):
        from scipy.stats import nbinom

        k = max(max_order, 1)
        return int(nbinom.ppf(1 - 1e-13, k, base.p)) + k + 2
    if isinstance(base, ZeroTruncatedPoisson):
        from scipy.stats import poisson

        k = max(max_order, 1)
        return int(poisson.ppf(1 - 1e-13, k * base.mu)) + k + 2
    raise TypeError(f"no default cap for {type(base).__name__}")


def convolve_up_to(dist, max_order, *, x_cap=None, method="auto"):
    """Build a :class:`ConvolutionTable` for ``dist`` up to ``max_order``.

    ``method`` selects between the analytic per-family convolution rows
    ("closed"), plain repeated convolution ("generic"), or whichever is
    available ("auto").
    """
    return ConvolutionTable(dist, max_order, x_cap=x_cap, method=method)


def conv_cdf(table, k, x):
    """Right-continuous CDF of the k-fold convolution power at x."""
    return table.cdf(k, x)


# ---------------------------------------------------------------------------
# descriptors and helpers


def jumps_from_descriptor(d):
    """Build a jump distribution from its JSON descriptor."""
    try:
        kind = d["type"]
    except (TypeError, KeyError):
        raise ValueError("descriptor must be a mapping with a 'type' key") from None
    if kind == "dirac":
        return Dirac(float(d["a"]))
    if kind == "geometric":
        return Geometric(float(d["p"]))
    if kind == "ztp":
        return ZeroTruncatedPoisson(float(d["mu"]))
    if kind == "gamma":
        return Gamma(float(d["shape"]), float(d["rate"]))
    if kind == "lattice":
        return Lattice(float(d["step"]), d["atoms"])
    if kind == "grid":
        return GridDensity(
            float(d["spacing"]),
            d["values"],
            smoothness=d.get("smoothness"),
            singular_points=tuple(d.get("singular_points", ())),
        )
    raise ValueError(f"unknown jump descriptor type {kind!r}")


def jumps_to_descriptor(dist):
    return dist.descriptor()


def to_lattice(dist, x_cap, tail_tol=1e-13):
    """Materialize a lattice-kind law as an explicit :class:`Lattice`.

    The tail beyond max(x_cap, far quantile) is folded into one closing atom,
    which leaves every quantity evaluated below ``x_cap`` unchanged.
    """
    if dist.kind != "lattice":
        raise TypeError("to_lattice expects a lattice-supported distribution")
    if isinstance(dist, Lattice):
        return dist
    n_cap = max(dist.index_cap_for(x_cap), _default_lattice_cap(dist, 1))
    dense = dist.masses_dense(n_cap)
    remainder = 1.0 - dense.sum()
    if remainder > tail_tol:
        raise ValueError(f"lattice truncation left {remainder} mass beyond cap {n_cap}")
    dense[-1] += remainder
    atoms = {int(n): float(p) for n, p in enumerate(dense) if p > 0.0}
    return Lattice(dist.step, atoms)


def discretize_to_lattice(dist, eps, x_cap):
    """CDF-step lattice approximation with step ``eps``.

    The approximating CDF is ``F_eps(x) = F(floor(x / eps) * eps)``, i.e. the
    atom at ``k * eps`` carries ``F(k*eps) - F((k-1)*eps)``; the remaining
    tail beyond ``x_cap`` is folded into one closing atom.
    """
    _check_positive("eps", eps)
    n_cap = int(math.ceil(x_cap / eps)) + 1
    grid = eps * np.arange(n_cap + 1)
    F = np.array([dist.cdf(g) for g in grid])
    masses = np.diff(F)
    masses = np.maximum(masses, 0.0)
    atoms = {}
    for n, p in enumerate(masses, start=1):
        if p > 0:
            atoms[n] = float(p)
    tail = 1.0 - float(masses.sum())
    if tail > 0:
        atoms[n_cap + 1] = atoms.get(n_cap + 1, 0.0) + tail
    total = sum(atoms.values())
    atoms = {n: p / total for n, p in atoms.items()}
    return Lattice(eps, atoms)
