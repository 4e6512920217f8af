"""Sklyanin-bracket evaluation on the group and the closed-form Poisson
tables it must reproduce (local, twisted, ambient), together with the
small generic 3D Poisson construction and the expansion machinery.

Closed forms are written through the curvature trig primitives, so one
implementation serves negative, zero and positive cosmological constant
(entries acquire the imaginary curvature scale eta for lam > 0) and also
accepts dual-number coordinates or a dual eta for expansions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bialgebra import Bivector
from .curvtrig import Dual, ch, eps_part, eta_of, re_part, sh
from .group_geom import (GroupPoint, ambient_derivatives, ambient_jacobian,
                         ambient_from_local, coset_derivatives, group_element,
                         invariant_field)

LOCAL_LABELS = ("x0", "x1", "x2", "x3")
AMBIENT_LABELS = ("s4", "s0", "s1", "s2", "s3")


# -- closed-form entries -------------------------------------------------------


def local_time_space(a: int, x, lam, eta, kinv):
    """{x0, xa}: the flat-looking sector, real for either curvature sign."""
    x1, x2, x3 = x[1], x[2], x[3]
    if a == 1:
        return -kinv * sh(lam, x1) / (ch(lam, x1) * ch(lam, x2) ** 2 * ch(lam, x3) ** 2)
    if a == 2:
        return -kinv * sh(lam, x2) / (ch(lam, x2) * ch(lam, x3) ** 2)
    return -kinv * sh(lam, x3) / ch(lam, x3)


def local_space_space(a: int, b: int, x, lam, eta, kinv):
    """{xa, xb} for a < b: one power of eta times a real profile.

    Parenthesized so the flat-limit dual derivative lands bit-exactly on
    the quadratic polynomials kinv * (x x).
    """
    x1, x2, x3 = x[1], x[2], x[3]
    t3 = sh(lam, x3) / ch(lam, x3)
    if (a, b) == (1, 2):
        return -(kinv * (ch(lam, x1) * (t3 * t3))) * eta
    if (a, b) == (1, 3):
        t2 = sh(lam, x2) / ch(lam, x2)
        return (kinv * (ch(lam, x1) * (t2 * t3))) * eta
    return -(kinv * (sh(lam, x1) * t3)) * eta


def twisted_time_space(a: int, x, lam, eta, kinv, vtheta):
    base = local_time_space(a, x, lam, eta, kinv)
    x1, x2 = x[1], x[2]
    if a == 1:
        return base - vtheta * ch(lam, x1) * sh(lam, x2) / ch(lam, x2)
    if a == 2:
        return base + vtheta * sh(lam, x1)
    return base


def ambient_entry(i: int, j: int, s, lam, eta, kinv):
    """{s^i, s^j} with ambient index order (s4, s0, s1, s2, s3), i < j."""
    s4, s0, s1, s2, s3 = s
    if i == 0:  # {s4, .}
        if j == 1:
            return -lam * kinv * (s1 * s1 + s2 * s2 + s3 * s3)  # -{s0,s4}
        return -lam * kinv * s[j] * s0  # eta^2 = -lam
    if i == 1:  # {s0, sa}
        return -kinv * s[j] * s4
    pair = (i, j)
    if pair == (2, 3):
        return -eta * kinv * s3 * s3
    if pair == (2, 4):
        return eta * kinv * s2 * s3
    return -eta * kinv * s1 * s3


@dataclass
class BracketTable:
    """Antisymmetric table of closed-form bracket evaluators."""

    name: str
    labels: tuple
    lam: float
    kinv: float
    vtheta: float = 0.0
    eta: object = None

    def __post_init__(self):
        if self.eta is None:
            self.eta = eta_of(self.lam)

    def entry(self, i: int, j: int, coords):
        if i == j:
            return 0.0
        if i > j:
            v = self.entry(j, i, coords)
            return -v
        if self.name in ("local", "twisted"):
            if i == 0:
                if self.name == "twisted":
                    return twisted_time_space(j, coords, self.lam, self.eta,
                                              self.kinv, self.vtheta)
                return local_time_space(j, coords, self.lam, self.eta, self.kinv)
            return local_space_space(i, j, coords, self.lam, self.eta, self.kinv)
        if self.name == "ambient":
            return ambient_entry(i, j, coords, self.lam, self.eta, self.kinv)
        raise KeyError(self.name)

    @property
    def dim(self) -> int:
        return len(self.labels)


def closed_form_local(lam: float, kinv: float) -> BracketTable:
    return BracketTable("local", LOCAL_LABELS, lam, kinv)


def closed_form_twisted(lam: float, kinv: float, vtheta: float) -> BracketTable:
    return BracketTable("twisted", LOCAL_LABELS, lam, kinv, vtheta)


def closed_form_ambient(lam: float, kinv: float) -> BracketTable:
    return BracketTable("ambient", AMBIENT_LABELS, lam, kinv)


def project_2plus1(table: BracketTable):
    """Pin x3 = 0: returns entry(i, j, (x0, x1, x2))."""

    def entry(i, j, coords3):
        return table.entry(i, j, (coords3[0], coords3[1], coords3[2], 0.0))

    return entry


# -- Sklyanin evaluation --------------------------------------------------------


def sklyanin_bracket(r: Bivector, f, g, point: GroupPoint, matrix=None):
    """{f, g}(h) = r^ij (XL_i f XL_j g - XR_i f XR_j g) for coset functions."""
    m = group_element(point) if matrix is None else matrix
    support = sorted({i for key in r.components for i in key})
    dl = {i: {} for i in support}
    dr = {i: {} for i in support}
    for i in support:
        for side, store in (("L", dl), ("R", dr)):
            store[i] = {
                "f": invariant_field(side, i, f, point, matrix=m),
                "g": invariant_field(side, i, g, point, matrix=m),
            }
    total = 0.0
    for (i, j), c in r.components.items():
        total = total + c * (
            dl[i]["f"] * dl[j]["g"] - dl[j]["f"] * dl[i]["g"]
            - dr[i]["f"] * dr[j]["g"] + dr[j]["f"] * dr[i]["g"])
    return total


def _contract(r: Bivector, dl: dict, dr: dict, mu: int, nu: int):
    total = 0.0
    for (i, j), c in r.components.items():
        total = total + c * (
            dl[i][mu] * dl[j][nu] - dl[j][mu] * dl[i][nu]
            - dr[i][mu] * dr[j][nu] + dr[j][mu] * dr[i][nu])
    return total


def bracket_matrix_local(r: Bivector, point: GroupPoint, matrix=None):
    """All {x^mu, x^nu} at a group point, as a 4x4 antisymmetric array."""
    m = group_element(point) if matrix is None else matrix
    support = sorted({i for key in r.components for i in key})
    dl = coset_derivatives(m, point.lam, support, "L")
    dr = coset_derivatives(m, point.lam, support, "R")
    out = np.zeros((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            v = _contract(r, dl, dr, mu, nu)
            out[mu, nu] = v
            out[nu, mu] = -v
    return out


def bracket_matrix_ambient(r: Bivector, point: GroupPoint, matrix=None):
    """All {s^A, s^B} at a group point, ambient order (s4, s0, s1, s2, s3)."""
    m = group_element(point) if matrix is None else matrix
    support = sorted({i for key in r.components for i in key})
    dl = ambient_derivatives(m, point.lam, support, "L")
    dr = ambient_derivatives(m, point.lam, support, "R")
    out = np.zeros((5, 5), dtype=complex)
    for a in range(5):
        for b in range(a + 1, 5):
            v = _contract(r, dl, dr, a, b)
            out[a, b] = v
            out[b, a] = -v
    return out


def sample_points(n: int, lam: float, rng, lorentz: bool = True):
    """Chart-safe random group points: |x| <= 0.8/max(1, sqrt|lam|)."""
    box = 0.8 / max(1.0, math.sqrt(abs(lam)))
    pts = []
    for _ in range(n):
        x = tuple(rng.uniform(-box, box) for _ in range(4))
        if lorentz:
            xi = tuple(rng.uniform(-0.5, 0.5) for _ in range(3))
            th = tuple(rng.uniform(-0.5, 0.5) for _ in range(3))
        else:
            xi = th = (0.0, 0.0, 0.0)
        pts.append(GroupPoint(x=x, xi=xi, th=th, lam=lam))
    return pts


def verify_table(r: Bivector, table: BracketTable, samples: int, lam: float,
                 seed: int = 0x5EED, check_lorentz_independence: bool = True) -> dict:
    """Compare the Sklyanin bracket against a closed-form table on a grid."""
    rng = np.random.default_rng(seed)
    ambient = table.name == "ambient"
    pair_dev: dict = {}
    indep_dev = 0.0
    worst = 0.0
    worst_point = None
    for point in sample_points(samples, lam, rng):
        m = group_element(point)
        if ambient:
            got = bracket_matrix_ambient(r, point, matrix=m)
            coords = tuple(float(m[k, 0]) for k in range(5))
        else:
            got = bracket_matrix_local(r, point, matrix=m)
            coords = point.x
        n = table.dim
        for i in range(n):
            for j in range(i + 1, n):
                want = table.entry(i, j, coords)
                dev = abs(got[i, j] - want)
                key = f"{table.labels[i]}^{table.labels[j]}"
                pair_dev[key] = max(pair_dev.get(key, 0.0), dev)
                if dev > worst:
                    worst, worst_point = dev, point.coords()
        if check_lorentz_independence:
            other = GroupPoint(x=point.x,
                               xi=tuple(rng.uniform(-0.5, 0.5) for _ in range(3)),
                               th=tuple(rng.uniform(-0.5, 0.5) for _ in range(3)),
                               lam=lam)
            got2 = (bracket_matrix_ambient if ambient else bracket_matrix_local)(r, other)
            indep_dev = max(indep_dev, float(np.max(np.abs(got2 - got))))
    return {
        "table": table.name,
        "lambda": lam,
        "kinv": table.kinv,
        "vtheta": table.vtheta,
        "samples": samples,
        "seed": seed,
        "max_deviation": worst,
        "worst_point": worst_point,
        "per_pair": {k: pair_dev[k] for k in sorted(pair_dev)},
        "lorentz_independence": indep_dev,
    }


# -- expansions, Jacobi, the 3D construction -------------------------------------


def eta_expansion_entry(table_name: str, i: int, j: int, coords, kinv: float,
                        vtheta: float = 0.0):
    """(zeroth, first) coefficients of the entry in the curvature scale.

    Dual-number differentiation at eta = 0 (so lam = -eta^2 = 0 exactly).
    """
    eta = Dual(0.0, 1.0)
    if table_name == "local":
        t = BracketTable("local", LOCAL_LABELS, 0.0, kinv, eta=eta)
    elif table_name == "twisted":
        t = BracketTable("twisted", LOCAL_LABELS, 0.0, kinv, vtheta, eta=eta)
    else:
        t = BracketTable("ambient", AMBIENT_LABELS, 0.0, kinv, eta=eta)
    v = t.entry(i, j, coords)
    return re_part(v), eps_part(v)


def eta_expansion(table: BracketTable, order: int = 1) -> dict:
    """Coefficient evaluators of every entry through the given order.

    Returns {(i, j): [f_0, f_1, ...]} where f_k(coords) is the k-th
    curvature-scale coefficient; only order 1 is supported.
    """
    if order != 1:
        raise ValueError("only the first-order expansion is implemented")
    out = {}
    n = table.dim
    for i in range(n):
        for j in range(i + 1, n):
            def f0(coords, i=i, j=j):
                return eta_expansion_entry(table.name, i, j, coords,
                                           table.kinv, table.vtheta)[0]

            def f1(coords, i=i, j=j):
                return eta_expansion_entry(table.name, i, j, coords,
                                           table.kinv, table.vtheta)[1]

            out[(i, j)] = [f0, f1]
    return out


def table_jacobi_residual(table: BracketTable, samples: int, seed: int = 0x5EED,
                          box: float | None = None) -> float:
    """Max |{x,{y,z}} + cyclic| over random points, via dual-number chains."""
    rng = np.random.default_rng(seed)
    if box is None:
        box = 0.8 / max(1.0, math.sqrt(abs(table.lam)))
    n = table.dim
    worst = 0.0
    for _ in range(samples):
        if table.name == "ambient":
            x = tuple(rng.uniform(-box, box) for _ in range(4))
            coords = ambient_from_local(x, table.lam)
        else:
            coords = tuple(rng.uniform(-box, box) for _ in range(n))

        def inner_grad(a, b):
            grads = []
            for mu in range(n):
                dual = tuple(Dual(float(c), 1.0 if k == mu else 0.0)
                             for k, c in enumerate(coords))
                grads.append(eps_part(table.entry(a, b, dual)))
            return grads

        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    total = 0.0
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        g = inner_grad(b, c)
                        total = total + sum(
                            table.entry(a, mu, coords) * g[mu] for mu in range(n))
                    worst = max(worst, abs(total))
    return worst


def _keep(c):
    """Coordinate pass-through tolerating nested duals and exact rationals."""
    return float(c) if isinstance(c, (int, float)) else c


class Poisson3D:
    """{x1,x2} = f dF/dx3 and cyclic; F is a Casimir by construction."""

    def __init__(self, f, casimir):
        self.f = f
        self.casimir = casimir

    def _grad(self, x):
        out = []
        for mu in range(3):
            # integer seeds keep exact (Fraction) coordinates exact
            dual = tuple(Dual(_keep(c), 1 if k == mu else 0)
                         for k, c in enumerate(x))
            out.append(eps_part(self.casimir(dual)))
        return out

    def entry(self, i: int, j: int, x):
        if i == j:
            return 0.0
        if i > j:
            return -self.entry(j, i, x)
        grad = self._grad(x)
        fv = self.f(x)
        if (i, j) == (0, 1):
            return fv * grad[2]
        if (i, j) == (1, 2):
            return fv * grad[0]
        return -fv * grad[1]  # {x1, x3} = -{x3, x1}

    def bracket_with(self, h, x):
        """{x^a, h} for a smooth h, evaluated at x: returns length-3 list."""
        gh = []
        for mu in range(3):
            dual = tuple(Dual(_keep(c), 1 if k == mu else 0)
                         for k, c in enumerate(x))
            gh.append(eps_part(h(dual)))
        return [sum(self.entry(a, b, x) * gh[b] for b in range(3))
                for a in range(3)]


def poisson_3d(f, casimir) -> Poisson3D:
    return Poisson3D(f, casimir)


def quadratic_space_poisson(eta, kinv) -> Poisson3D:
    """The curvature-deformed space sector from F = |x|^2, f = -eta*kinv*x3/2.

    Works with floats or exact Fractions (division by 2 stays exact).
    """
    return poisson_3d(lambda x: -(eta * kinv * x[2]) / 2,
                      lambda x: x[0] * x[0] + x[1] * x[1] + x[2] * x[2])


def push_local_to_ambient(table: BracketTable, x) -> np.ndarray:
    """{s^A, s^B} induced from the local table through the chart Jacobian."""
    lam = table.lam
    jac = ambient_jacobian(x, lam)
    loc = np.zeros((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            v = table.entry(mu, nu, x)
            loc[mu, nu] = v
            loc[nu, mu] = -v
    return jac @ loc @ jac.T
