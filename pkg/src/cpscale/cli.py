"""Command-line front end: evaluate over grids, verify, and simulate.

Exit codes are a stable contract: 0 success, 2 configuration error,
3 numeric error (truncation/conditioning/overflow), and for ``verify`` /
``simulate`` a failed check also exits nonzero (1).
"""

import json
import math
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from .errors import ConfigError, CPScaleError, DomainError, NumericRangeError, TruncationError
from .jumps import jumps_from_descriptor
from .oracles import (
    PathConfig,
    laplace_check,
    mc_expectation_derivatives_and_primitive,
    mc_expectation_w,
    mc_two_sided_exit,
    pk_zero_scale,
    recursion_identity_residual,
)
from .processes import ProcessParams, phi
from .scale import (
    ScaleEvaluator,
    TruncationPolicy,
    derivative_minus,
    derivative_plus,
    primitive,
    rescale_drift,
    rescale_space,
    scale_w,
)

_COLUMNS = ("W", "dW_plus", "dW_minus", "intW")


@dataclass
class RunConfig:
    """Parsed and validated run configuration."""

    params: ProcessParams
    jumps: object
    x_min: float = 0.0
    x_max: float = 1.0
    n_points: int = 2
    outputs: tuple = _COLUMNS
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)
    n_paths: int = 100_000
    seed: int = 1
    workers: int = 1
    mc_targets: tuple = ()
    betas: tuple = ()

    @classmethod
    def from_mapping(cls, doc):
        try:
            proc = doc.get("process", {})
            params = ProcessParams(
                c=float(proc.get("c", 1.0)),
                lam=float(proc.get("lambda", proc.get("lam", 1.0))),
                q=float(proc.get("q", 0.0)),
            )
            jumps = jumps_from_descriptor(doc["jumps"])
            grid = doc.get("grid", {})
            x_min = float(grid.get("x_min", 0.0))
            x_max = float(grid.get("x_max", 1.0))
            n_points = int(grid.get("n_points", 2))
            outputs = tuple(doc.get("outputs", _COLUMNS))
            tr = doc.get("truncation", {})
            truncation = TruncationPolicy(
                abs_tol=float(tr.get("abs_tol", 1e-10)),
                hard_max_K=int(tr.get("hard_max_K", 10_000)),
                cond_fallback=float(tr.get("cond_fallback", 1e4)),
                cond_warn=float(tr.get("cond_warn", 1e8)),
            )
            mc = doc.get("mc", {})
            cfg = cls(
                params=params,
                jumps=jumps,
                x_min=x_min,
                x_max=x_max,
                n_points=n_points,
                outputs=outputs,
                truncation=truncation,
                n_paths=int(mc.get("n_paths", 100_000)),
                seed=int(mc.get("seed", 1)),
                workers=int(mc.get("workers", 1)),
                mc_targets=tuple(mc.get("targets", ())),
                betas=tuple(float(b) for b in doc.get("verify", {}).get("betas", ())),
            )
        except CPScaleError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc
        if not (0.0 <= cfg.x_min < cfg.x_max):
            raise ConfigError(f"grid bounds need 0 <= x_min < x_max, got [{cfg.x_min}, {cfg.x_max}]")
        if cfg.n_points < 2:
            raise ConfigError("grid n_points must be >= 2")
        bad = [o for o in cfg.outputs if o not in _COLUMNS]
        if bad:
            raise ConfigError(f"unknown output columns {bad}; choose from {list(_COLUMNS)}")
        if cfg.n_paths < 1:
            raise ConfigError("mc n_paths must be >= 1")
        if cfg.workers < 1:
            raise ConfigError("mc workers must be >= 1")
        return cfg

    def grid(self):
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def evaluator(self):
        return ScaleEvaluator(self.params, self.jumps, self.truncation)


def _load(config_path, q, grid, seed, tol):
    try:
        with open(config_path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    if q is not None:
        doc.setdefault("process", {})["q"] = q
    if grid is not None:
        parts = grid.split(":")
        if len(parts) != 3:
            raise ConfigError("--grid expects MIN:MAX:N")
        doc["grid"] = {"x_min": float(parts[0]), "x_max": float(parts[1]), "n_points": int(parts[2])}
    if seed is not None:
        doc.setdefault("mc", {})["seed"] = seed
    if tol is not None:
        doc.setdefault("truncation", {})["abs_tol"] = tol
    return RunConfig.from_mapping(doc)


def _fmt(v):
    return format(float(v), ".17g")


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _config_options(f):
    f = click.option("--q", type=float, default=None, help="Override the discount rate.")(f)
    f = click.option("--grid", default=None, help="Override the x grid as MIN:MAX:N.")(f)
    f = click.option("--seed", type=int, default=None, help="Override the Monte Carlo seed.")(f)
    f = click.option("--tol", type=float, default=None, help="Override the series abs tolerance.")(f)
    f = click.option("--out", "-o", default=None, help="Write to a file instead of stdout.")(f)
    return f


@click.group()
def main():
    """Scale functions of compound Poisson processes with positive drift."""


@main.command("eval")
@click.argument("config", type=click.Path())
@_config_options
def cmd_eval(config, q, grid, seed, tol, out):
    """Evaluate W (and derivatives/primitive) on a grid; emit CSV."""
    try:
        cfg = _load(config, q, grid, seed, tol)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        raise SystemExit(2)
    ev = cfg.evaluator()
    fns = {
        "W": scale_w,
        "dW_plus": derivative_plus,
        "dW_minus": lambda e, x: derivative_minus(e, x) if x > 0 else float("nan"),
        "intW": primitive,
    }
    rows = ["x," + ",".join(cfg.outputs)]
    for x in cfg.grid():
        cells = [_fmt(x)]
        for col in cfg.outputs:
            try:
                cells.append(_fmt(fns[col](ev, float(x))))
            except (TruncationError, NumericRangeError) as exc:
                click.echo(f"numeric error at x={x:.17g} ({col}): {exc}", err=True)
                raise SystemExit(3)
        rows.append(",".join(cells))
    _emit("\n".join(rows) + "\n", out)


@main.command("verify")
@click.argument("config", type=click.Path())
@_config_options
def cmd_verify(config, q, grid, seed, tol, out):
    """Run the verification suite; emit a JSON report, exit 0 iff all pass."""
    try:
        cfg = _load(config, q, grid, seed, tol)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        raise SystemExit(2)
    try:
        report = _verify_report(cfg)
    except (TruncationError, NumericRangeError) as exc:
        click.echo(f"numeric error: {exc}", err=True)
        raise SystemExit(3)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _emit(text, out)
    ok = all(c["pass"] for c in report["checks"])
    raise SystemExit(0 if ok else 1)


def _check(name, status, residual, tolerance):
    return {
        "name": name,
        "status": status,
        "pass": status != "fail",
        "residual": residual,
        "tolerance": tolerance,
    }


def _verify_report(cfg):
    ev = cfg.evaluator()
    p = cfg.params
    checks = []
    rng = np.random.Generator(np.random.Philox(key=np.uint64(cfg.seed)))

    # exact boundary value
    r = abs(scale_w(ev, 0.0) * p.c - 1.0)
    checks.append(_check("boundary_value_at_zero", "pass" if r == 0.0 else "fail", r, 0.0))

    # pure-drift zone below the smallest jump
    m = cfg.jumps.min_support()
    if m > 0:
        worst = 0.0
        for x in np.linspace(0.0, m * 0.999, 7):
            ref = math.exp(p.rho * x) / p.c
            worst = max(worst, abs(scale_w(ev, float(x)) - ref) / ref)
        checks.append(_check("pure_drift_zone", "pass" if worst < 1e-13 else "fail", worst, 1e-13))
    else:
        checks.append(_check("pure_drift_zone", "not-applicable", None, 1e-13))

    # Laplace identity
    phi_q = phi(p, cfg.jumps, p.q)
    betas = cfg.betas or tuple(phi_q + d for d in (2.2, 2.8, 3.4, 4.1, 4.8))
    residuals = []
    skipped = 0
    for b in betas:
        try:
            residuals.append(laplace_check(ev, b))
        except DomainError:
            skipped += 1
    if residuals:
        worst = max(residuals)
        checks.append(_check("laplace_identity", "pass" if worst < 1e-4 else "fail", worst, 1e-4))
    else:
        checks.append(_check("laplace_identity", "domain-skipped", None, 1e-4))

    # recursion identity (lattice only)
    if cfg.jumps.kind == "lattice":
        xs = rng.uniform(1e-3, cfg.x_max, size=100)
        worst = max(recursion_identity_residual(ev, float(x)) for x in xs)
        tol_r = max(ev.truncation.abs_tol, 1e-10)
        checks.append(
            _check("recursion_identity", "pass" if worst < tol_r else "fail", worst, tol_r)
        )
    else:
        checks.append(_check("recursion_identity", "not-applicable", None, None))

    # scaling relations
    xs = rng.uniform(0.0, cfg.x_max, size=12)
    eps = float(rng.uniform(0.5, 2.0))
    ev_sp = rescale_space(ev, eps, x_cap=cfg.x_max / eps + 8.0)
    worst = max(
        abs(scale_w(ev, float(x)) - scale_w(ev_sp, float(x) / eps) / eps)
        / max(scale_w(ev, float(x)), 1e-300)
        for x in xs
    )
    checks.append(_check("scaling_space", "pass" if worst < 1e-12 else "fail", worst, 1e-12))
    ev_dr = rescale_drift(ev)
    worst = max(
        abs(scale_w(ev, float(x)) - scale_w(ev_dr, float(x)) / p.c)
        / max(scale_w(ev, float(x)), 1e-300)
        for x in xs
    )
    checks.append(_check("scaling_drift", "pass" if worst < 1e-12 else "fail", worst, 1e-12))

    # integrated-tail cross-check
    mu = cfg.jumps.mean()
    if p.q == 0.0 and p.lam * mu > p.c:
        pc = PathConfig(p, cfg.jumps)
        worst = 0.0
        for x in np.linspace(0.0, min(cfg.x_max, 3.0), 7):
            w_ref = scale_w(ev, float(x))
            worst = max(worst, abs(pk_zero_scale(pc, float(x)) - w_ref) / max(w_ref, 1.0))
        checks.append(
            _check("integrated_tail_series", "pass" if worst < 1e-5 else "fail", worst, 1e-5)
        )
    else:
        checks.append(_check("integrated_tail_series", "not-applicable", None, 1e-5))

    return {"config": {"seed": cfg.seed, "x_max": cfg.x_max}, "checks": checks}


@main.command("simulate")
@click.argument("config", type=click.Path())
@click.option("--workers", type=int, default=None, help="Monte Carlo worker substreams.")
@_config_options
def cmd_simulate(config, workers, q, grid, seed, tol, out):
    """Monte Carlo comparisons against the evaluators; JSON report, exit 0 iff all |z| <= 3."""
    try:
        cfg = _load(config, q, grid, seed, tol)
        if workers is not None:
            if workers < 1:
                raise ConfigError("--workers must be >= 1")
            cfg.workers = workers
        targets = _simulate_targets(cfg)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        raise SystemExit(2)
    ev = cfg.evaluator()
    pc = PathConfig(cfg.params, cfg.jumps)
    results = []
    try:
        for t in targets:
            results.append(_run_target(cfg, ev, pc, t))
    except (TruncationError, NumericRangeError) as exc:
        click.echo(f"numeric error: {exc}", err=True)
        raise SystemExit(3)
    report = {
        "mc": {"n_paths": cfg.n_paths, "seed": cfg.seed, "workers": cfg.workers},
        "targets": results,
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", out)
    ok = all(abs(r["z_score"]) <= 3.0 for r in results)
    raise SystemExit(0 if ok else 1)


def _simulate_targets(cfg):
    if cfg.mc_targets:
        targets = []
        for t in cfg.mc_targets:
            if "kind" not in t or "x" not in t:
                raise ConfigError(f"mc target needs 'kind' and 'x': {t}")
            targets.append(dict(t))
        return targets
    a = cfg.x_max
    return [
        {"kind": "exit", "x": a / 2.0, "a": a},
        {"kind": "w", "x": max(cfg.x_min, a / 2.0)},
    ]


def _run_target(cfg, ev, pc, t):
    kind = t["kind"]
    x = float(t["x"])
    kw = dict(n_paths=cfg.n_paths, seed=cfg.seed, n_workers=cfg.workers)
    if kind == "exit":
        a = float(t.get("a", cfg.x_max))
        est = mc_two_sided_exit(pc, x, a, **kw)
        analytic = scale_w(ev, x) / scale_w(ev, a)
    elif kind == "w":
        est = mc_expectation_w(pc, x, **kw)
        analytic = scale_w(ev, x)
    elif kind in ("dw_plus", "dw_minus"):
        which = "plus" if kind == "dw_plus" else "minus"
        est = mc_expectation_derivatives_and_primitive(pc, x, which, **kw)
        analytic = derivative_plus(ev, x) if which == "plus" else derivative_minus(ev, x)
    elif kind == "primitive":
        est = mc_expectation_derivatives_and_primitive(pc, x, "primitive", **kw)
        analytic = primitive(ev, x)
    else:
        raise ConfigError(f"unknown mc target kind {kind!r}")
    if est.stderr > 0:
        z = (est.value - analytic) / est.stderr
    else:
        z = 0.0 if est.value == analytic else math.inf
    result = {
        "kind": kind,
        "x": x,
        "analytic": analytic,
        "estimate": est.value,
        "stderr": est.stderr,
        "z_score": z,
    }
    if kind == "exit":
        result["a"] = float(t.get("a", cfg.x_max))
    return result


if __name__ == "__main__":
    main()
