"""Batch driver: every verification suite and table export as a subcommand.

Reports are JSON (schema ``report_v1``), deterministic byte-for-byte for a
fixed configuration (sorted keys, seeded sampling, no timestamps).  Exit
codes: 0 all checks passed, 2 some residual exceeded its tolerance, 3
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import bialgebra as B
from . import ncalg, rclass, sklyanin
from .curvtrig import eta_of
from .group_geom import (GroupPoint, ambient_from_local, group_element,
                         isometry_residual, metric_at, metric_pullback,
                         pseudosphere_residual)
from .liealg import IDX, ads_algebra, subalgebra
from .scalars import Scalar, sym


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    lam: object = "formal"      # float or "formal"
    kappa_inv: object = "formal"
    twist: float = 0.17
    samples: int = 200
    seed: int = 0x5EED
    tolerance: float = 1e-8
    out: str | None = None
    fmt: str = "json"
    inject_fault: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be positive")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("format must be json or csv")

    @property
    def formal(self) -> bool:
        return self.lam == "formal"

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")  # the destination path is not semantic configuration
        d["schema"] = "report_v1"
        return d


def _parse_lambda(text: str):
    if text == "formal":
        return "formal"
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"bad --lambda value {text!r}") from exc


def _check(name: str, value, tol) -> dict:
    ok = value <= tol
    return {"name": name, "residual": value, "tolerance": tol, "pass": bool(ok)}


def _rmatrix_set(formal: bool, lam, kinv, twist):
    """The five named r-matrices with the algebras they live on."""
    if formal:
        eta, kv, vt = sym("eta"), sym("kinv"), sym("vtheta")
        g_curved = ads_algebra(-(eta ** 2))
        g_flat = ads_algebra(0)
    else:
        eta, kv, vt = eta_of(lam), float(kinv), float(twist)
        g_curved = ads_algebra(float(lam))
        g_flat = ads_algebra(0.0)
    return [
        ("r_flat", g_flat, rclass.r_poincare(kv)),
        ("r_flat_twisted", g_flat, rclass.r_poincare_twisted(kv, vt)),
        ("r_curved", g_curved, rclass.r_kads(kv, eta)),
        ("r_curved_twisted", g_curved, rclass.r_kads_twisted(kv, eta, vt)),
        ("r_2plus1", g_curved, rclass.r_2plus1(kv)),
    ]


def cmd_bialgebra(cfg: RunConfig) -> dict:
    kinv = cfg.kappa_inv if not cfg.formal else "formal"
    entries = _rmatrix_set(cfg.formal, cfg.lam, 0.31 if kinv == "formal" else kinv,
                           cfg.twist)
    tol = 0 if cfg.formal else cfg.tolerance
    checks = []
    for name, g, r in entries:
        if name == "r_2plus1":
            sub = subalgebra(g, rclass.SUBALG_2PLUS1)
            remap = {gi: p for p, gi in enumerate(rclass.SUBALG_2PLUS1)}
            r_sub = B.Bivector({(remap[i], remap[j]): c
                                for (i, j), c in r.components.items()})
            checks.append(_check(f"{name}.mcybe", B.mcybe_residual(sub, r_sub), tol))
            continue
        delta = B.cocommutator(g, r)
        if cfg.inject_fault and name == "r_curved":
            one = Scalar.rational(1) if cfg.formal else 1.0
            delta[IDX["P0"]] = delta[IDX["P0"]] + B.Bivector.from_terms(
                (IDX["J1"], IDX["J2"], one))
        checks.append(_check(f"{name}.mcybe", B.mcybe_residual(g, r), tol))
        checks.append(_check(f"{name}.dual_jacobi", B.dual_jacobi_residual(delta), tol))
        coiso = B.coisotropy_check(g, delta, rclass.LORENTZ)
        checks.append({"name": f"{name}.coisotropy_lorentz", "residual": 0 if coiso else 1,
                       "tolerance": 0, "pass": bool(coiso)})
        primitive = delta[IDX["P0"]].norm()
        checks.append(_check(f"{name}.time_translation_primitive", primitive, tol))
    return {"suite": "bialgebra", "config": cfg.echo(), "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def cmd_classify(cfg: RunConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    checks = []
    # symbolic ideal extraction and equivalence
    extracted = rclass.constraint_residuals()
    ideal = rclass.ideal_equivalence(extracted, rclass.eq_constraint_polynomials())
    checks.append({"name": "constraint_ideal_equivalence",
                   "residual": 0 if ideal["equal"] else 1, "tolerance": 0,
                   "pass": ideal["equal"]})
    # primitivity reduction of the generic ansatz
    fam = rclass.generic_ansatz()
    red = rclass.impose_primitivity(fam, ads_algebra(sym("Lambda")), IDX["P0"])
    checks.append({"name": "primitivity_kernel_dim", "residual": len(red.params),
                   "tolerance": 15, "pass": len(red.params) == 15})
    # canonicalization transcripts
    n_canon = min(cfg.samples, 100)
    kinv = 0.31 if cfg.formal else float(cfg.kappa_inv)
    worst = 0.0
    transcripts = []
    for _ in range(n_canon):
        th = float(rng.uniform(0.05, 3.0))
        if abs(th - math.pi / 2) < 0.05:
            th = 0.3
        ph = float(rng.uniform(0.0, 2 * math.pi))
        tw = float(rng.uniform(-1.0, 1.0))
        rot, exp, transcript = rclass.canonicalize(th, ph, tw, kinv=kinv, lam=-1.0)
        keys = set(rot.components) | set(exp.components)
        dev = max(abs(rot.components.get(k, 0.0) - exp.components.get(k, 0.0))
                  for k in keys)
        worst = max(worst, dev)
        transcript["deviation"] = dev
        transcripts.append(transcript)
    checks.append(_check("canonicalization_max_deviation", worst, 1e-12))
    # falsification sampling
    sat_worst = 0.0
    vio_best = math.inf
    sample_log = []
    for _ in range(cfg.samples):
        lamv = float(rng.uniform(-2.0, -0.2))
        kv = float(rng.uniform(0.1, 1.0))
        radius = math.sqrt(-lamv) * kv
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        t = float(rng.uniform(-1, 1))
        alpha = tuple(radius * v for v in n)
        beta = tuple(t * v for v in n)
        rs = rclass.numeric_family_residual(alpha, beta, kv, lamv)
        sat_worst = max(sat_worst, rs)
        while True:
            alpha_v = tuple(rng.uniform(-1.5, 1.5, 3))
            beta_v = tuple(rng.uniform(-1.5, 1.5, 3))
            if rclass.constraint_distance(alpha_v, beta_v, radius) > 0.1:
                break
        rv = rclass.numeric_family_residual(alpha_v, beta_v, kv, lamv)
        vio_best = min(vio_best, rv)
        if len(sample_log) < 20:
            sample_log.append({"lambda": lamv, "kinv": kv,
                               "satisfying_residual": rs,
                               "violating_residual": rv})
    checks.append(_check("satisfying_samples_max_residual", sat_worst, 1e-10))
    checks.append({"name": "violating_samples_min_residual", "residual": vio_best,
                   "tolerance": 1e-6, "pass": vio_best > 1e-6})
    return {"suite": "classify", "config": cfg.echo(),
            "constraint_polynomials": [str(p) for p in extracted],
            "ideal_equivalence": ideal,
            "canonicalization": transcripts[:10],
            "sample_residuals": sample_log,
            "checks": checks, "pass": all(c["pass"] for c in checks)}


def cmd_poisson(cfg: RunConfig) -> dict:
    lam = -1.0 if cfg.formal else float(cfg.lam)
    kinv = 0.31 if cfg.formal else float(cfg.kappa_inv)
    eta = eta_of(lam)
    checks = []
    reports = {}
    tables = [
        ("local", sklyanin.closed_form_local(lam, kinv), rclass.r_kads(kinv, eta)),
        ("twisted", sklyanin.closed_form_twisted(lam, kinv, cfg.twist),
         rclass.r_kads_twisted(kinv, eta, cfg.twist)),
        ("ambient", sklyanin.closed_form_ambient(lam, kinv), rclass.r_kads(kinv, eta)),
    ]
    for name, table, r in tables:
        rep = sklyanin.verify_table(r, table, cfg.samples, lam, seed=cfg.seed)
        rep["worst_point"] = list(rep["worst_point"]) if rep["worst_point"] else None
        reports[name] = rep
        checks.append(_check(f"{name}.sklyanin_match", rep["max_deviation"],
                             cfg.tolerance))
        checks.append(_check(f"{name}.lorentz_independence",
                             rep["lorentz_independence"], cfg.tolerance))
        checks.append(_check(f"{name}.jacobi", sklyanin.table_jacobi_residual(
            table, min(cfg.samples, 50), seed=cfg.seed), 1e-7))
    # curvature expansion of the local table
    rng = np.random.default_rng(cfg.seed)
    exp_worst = 0.0
    for _ in range(min(cfg.samples, 50)):
        x = tuple(rng.uniform(-0.8, 0.8, 4))
        z, f = sklyanin.eta_expansion_entry("local", 0, 1, x, kinv)
        exp_worst = max(exp_worst, abs(z - (-kinv * x[1])), abs(f))
        z, f = sklyanin.eta_expansion_entry("local", 1, 2, x, kinv)
        exp_worst = max(exp_worst, abs(z), abs(f - (-kinv * x[3] ** 2)))
    checks.append(_check("first_order_expansion", exp_worst, 1e-12))
    # space sector conservation along a sampled flow
    p3 = sklyanin.quadratic_space_poisson(1.0, kinv)
    from scipy.integrate import solve_ivp
    x0 = [0.4, -0.3, 0.8]
    ham = lambda xx: 0.7 * xx[0] - 0.3 * xx[1] + 0.14 * xx[2]
    sol = solve_ivp(lambda t, y: p3.bracket_with(ham, y), (0.0, 1.0), x0,
                    rtol=1e-11, atol=1e-13)
    leaf = abs(sum(v * v for v in sol.y[:, -1]) - sum(v * v for v in x0))
    checks.append(_check("sphere_leaf_conservation", leaf, 1e-8))
    # the 2+1 projection kills the space-space bracket
    proj = sklyanin.project_2plus1(sklyanin.closed_form_local(lam, kinv))
    checks.append(_check("projection_space_bracket", abs(proj(1, 2, (0.2, 0.3, 0.1))), 0.0))
    return {"suite": "poisson", "config": cfg.echo(), "tables": reports,
            "checks": checks, "pass": all(c["pass"] for c in checks)}


def cmd_nc(cfg: RunConfig) -> dict:
    checks = []
    attestations = {}
    bundles = ncalg.builtin_algebras()
    for name, bundle in bundles.items():
        alg = bundle["algebra"]
        checks.append(_check(f"{name}.jacobi_certificate",
                             alg.jacobi_certificate(), 0))
        attestations[name] = alg.certificates_json()
        for cname, (cas, subset) in bundle["casimirs"].items():
            checks.append(_check(f"{name}.casimir.{cname}",
                                 alg.casimir_check(cas, subset), 0))
    checks.append(_check("flat_limits", 0 if ncalg.flat_limits_ok() else 1, 0))
    checks.append(_check("displayed_casimir_brackets",
                         0 if ncalg.displayed_brackets_ok() else 1, 0))
    return {"suite": "nc", "config": cfg.echo(), "checks": checks,
            "triple_attestations": attestations,
            "pass": all(c["pass"] for c in checks)}


def cmd_export(cfg: RunConfig) -> dict:
    lam = -1.0 if cfg.formal else float(cfg.lam)
    kinv = 0.31 if cfg.formal else float(cfg.kappa_inv)
    rng = np.random.default_rng(cfg.seed)
    box = 0.8 / max(1.0, math.sqrt(abs(lam)))
    rows = []
    table = sklyanin.closed_form_local(lam, kinv)
    for _ in range(cfg.samples):
        x = tuple(float(v) for v in rng.uniform(-box, box, 4))
        s = ambient_from_local(x, lam)
        gp = GroupPoint(x=x, lam=lam)
        m = group_element(gp)
        metr = metric_at(x, lam)
        pull = metric_pullback(x, lam)
        row = {
            "x": list(x),
            "ambient": [float(v) for v in s],
            "pseudosphere_residual": float(pseudosphere_residual(s, lam)),
            "isometry_residual": isometry_residual(m, lam),
            "metric_diag": [float(metr[i, i]) for i in range(4)],
            "metric_pullback_dev": float(np.max(np.abs(metr - pull))),
            "brackets": {f"x{i}^x{j}": repr(complex(table.entry(i, j, x)))
                         for i in range(4) for j in range(i + 1, 4)},
        }
        rows.append(row)
    report = {"suite": "export", "config": cfg.echo(), "rows": rows, "pass": True,
              "checks": []}
    if cfg.fmt == "csv" and cfg.out:
        base, _ = os.path.splitext(cfg.out)
        with open(base + "_geometry.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x0", "x1", "x2", "x3", "s4", "s0", "s1", "s2", "s3",
                        "pseudosphere_residual", "isometry_residual"])
            for row in rows:
                w.writerow([repr(v) for v in row["x"] + row["ambient"]]
                           + [repr(row["pseudosphere_residual"]),
                              repr(row["isometry_residual"])])
        with open(base + "_brackets.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            pairs = sorted(rows[0]["brackets"])
            w.writerow(["x0", "x1", "x2", "x3"] + pairs)
            for row in rows:
                w.writerow([repr(v) for v in row["x"]]
                           + [row["brackets"][p] for p in pairs])
    return report


COMMANDS = {
    "check-bialgebra": cmd_bialgebra,
    "classify": cmd_classify,
    "poisson": cmd_poisson,
    "nc": cmd_nc,
    "export": cmd_export,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="kads", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--lambda", dest="lam", default="formal",
                       help='cosmological constant: a float or "formal"')
        p.add_argument("--kappa-inv", dest="kappa_inv", default="0.31")
        p.add_argument("--twist", type=float, default=0.17)
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--seed", type=lambda s: int(s, 0), default=0x5EED)
        p.add_argument("--tol", dest="tolerance", type=float, default=1e-8)
        p.add_argument("--out", default=None)
        p.add_argument("--format", dest="fmt", choices=("json", "csv"),
                       default="json")
        if name == "check-bialgebra":
            p.add_argument("--inject-fault", action="store_true")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        lam = _parse_lambda(args.lam)
        kappa_inv = args.kappa_inv
        if kappa_inv != "formal":
            kappa_inv = float(kappa_inv)
        cfg = RunConfig(lam=lam, kappa_inv=kappa_inv, twist=args.twist,
                        samples=args.samples, seed=args.seed,
                        tolerance=args.tolerance, out=args.out, fmt=args.fmt,
                        inject_fault=getattr(args, "inject_fault", False),
                        threads=int(os.environ.get("KADS_THREADS", "1")))
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 3
    report = COMMANDS[args.command](cfg)
    text = json.dumps(report, sort_keys=True, indent=1, default=repr)
    if cfg.out and cfg.fmt == "json":
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["pass"] else 2


if __name__ == "__main__":
    sys.exit(main())
