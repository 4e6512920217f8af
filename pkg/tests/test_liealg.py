import json
import math

import numpy as np
import pytest

from kads.liealg import (BASIS, DIM, IDX, LieAlgebra, NotOrthogonal,
                         NotSubalgebra, ads_algebra, jacobi_residual,
                         rotate_basis, subalgebra)
from kads.scalars import Scalar, rat, sym, trig_rules

LAM = sym("Lambda")


def term_map(g, a, b):
    return {BASIS[k]: c for k, c in g.bracket_basis(IDX[a], IDX[b])}


def test_table_spot_checks():
    g = ads_algebra(LAM)
    assert term_map(g, "J1", "J2") == {"J3": rat(1)}
    assert term_map(g, "K1", "P0") == {"P1": rat(1)}
    assert term_map(g, "K1", "P1") == {"P0": rat(1)}
    assert term_map(g, "P0", "P1") == {"K1": -LAM}
    assert term_map(g, "P1", "P2") == {"J3": LAM}
    assert term_map(g, "P0", "J3") == {}
    assert term_map(g, "K1", "K2") == {"J3": rat(-1)}
    assert term_map(g, "J2", "P1") == {"P3": rat(-1)}


def hand_coded_flat_table():
    """Independent zero-curvature table, written out entry by entry."""
    eps = {(1, 2): (3, 1), (2, 3): (1, 1), (1, 3): (2, -1)}
    struct = {}

    def put(a, b, c, s):
        i, j = IDX[a], IDX[b]
        if i > j:
            i, j, s = j, i, -s
        struct.setdefault((i, j), []).append((IDX[c], rat(s)))

    for (a, b), (c, s) in eps.items():
        put(f"J{a}", f"J{b}", f"J{c}", s)
        put(f"K{a}", f"K{b}", f"J{c}", -s)
    for a in range(1, 4):
        for b in range(1, 4):
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            c, s = eps[key]
            sign = s if a < b else -s
            put(f"J{a}", f"P{b}", f"P{c}", sign)
            put(f"J{a}", f"K{b}", f"K{c}", sign)
        put(f"K{a}", "P0", f"P{a}", 1)
        put(f"K{a}", f"P{a}", "P0", 1)
    return LieAlgebra({k: tuple(v) for k, v in struct.items()})


def test_flat_limit_matches_hand_coded_table():
    flat = ads_algebra(0)
    hand = hand_coded_flat_table()
    keys = set(flat.structure) | set(hand.structure)
    for key in keys:
        assert dict(flat.structure.get(key, ())) == dict(hand.structure.get(key, ())), key


def test_jacobi_zero_for_all_lambdas():
    for lam in (-1, 0, 1, LAM):
        assert jacobi_residual(ads_algebra(lam)) == 0


def test_jacobi_detects_corruption():
    g = ads_algebra(0)
    bad = dict(g.structure)
    key = (IDX["J1"], IDX["J2"])
    bad[key] = tuple((k, c * 2) for k, c in bad[key])
    assert jacobi_residual(LieAlgebra(bad)) > 0


def test_bracket_linearity_and_antisymmetry():
    g = ads_algebra(LAM)
    zero = Scalar()
    one = rat(1)
    x = [zero] * DIM
    x[IDX["K1"]] = one
    x[IDX["K2"]] = one
    p0 = [zero] * DIM
    p0[IDX["P0"]] = one
    out = g.bracket(x, p0)
    assert out[IDX["P1"]] == one and out[IDX["P2"]] == one
    assert all(c == Scalar() or c == 0 for i, c in enumerate(out)
               if i not in (IDX["P1"], IDX["P2"]))
    assert all(c == Scalar() for c in g.bracket(x, x))
    # flat limit of [P0, P1]
    assert all(c == Scalar() for c in ads_algebra(0).bracket(p0, _unit("P1")))


def _unit(name):
    v = [Scalar()] * DIM
    v[IDX[name]] = rat(1)
    return v


def numeric_rotation(theta, phi):
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    ry = np.array([[ct, 0, st], [0, 1, 0], [-st, 0, ct]])
    rz = np.array([[cp, -sp, 0], [sp, cp, 0], [0, 0, 1]])
    return rz @ ry


def test_rotate_basis_identity_and_symbolic_row():
    g = ads_algebra(LAM)
    ident = [[rat(1) if i == j else Scalar() for j in range(3)] for i in range(3)]
    rot = rotate_basis(g, ident)
    x = _unit("J3")
    assert rot.apply(x) == x
    # symbolic rotation built from the trig stand-ins maps J3 as expected
    # (third column is the rotated axis)
    ct, stv, cp, sp = sym("ctheta"), sym("stheta"), sym("cphi"), sym("sphi")
    r3 = [
        [ct * cp, sp, stv * cp],
        [-(ct * sp), cp, -(stv * sp)],
        [-stv, Scalar(), ct],
    ]
    rot = rotate_basis(g, r3, rules=trig_rules())
    out = rot.apply(_unit("J3"))
    assert out[IDX["J1"]] == stv * cp
    assert out[IDX["J2"]] == -(stv * sp)
    assert out[IDX["J3"]] == ct
    assert out[IDX["P0"]] == Scalar()


def test_rotate_basis_rejects_non_orthogonal():
    g = ads_algebra(0)
    bad = [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    with pytest.raises(NotOrthogonal):
        rotate_basis(g, bad)


def test_rotation_composition_and_structure_invariance():
    rng = np.random.default_rng(5)
    for lam in (-1.0, 0.7):
        g = ads_algebra(lam)
        t1, p1, t2, p2 = rng.uniform(0, 3, 4)
        r1, r2 = numeric_rotation(t1, p1), numeric_rotation(t2, p2)
        rot1 = rotate_basis(g, r1.tolist())
        rot2 = rotate_basis(g, r2.tolist())
        rot21 = rotate_basis(g, (r2 @ r1).tolist())
        v = list(rng.uniform(-1, 1, DIM))
        lhs = rot2.apply(rot1.apply(v))
        rhs = rot21.apply(v)
        assert max(abs(a - b) for a, b in zip(lhs, rhs)) < 1e-12
        # pushforward invariance of the structure constants: conjugation oracle
        mats = np.zeros((DIM, DIM, DIM))
        for (i, j), terms in g.structure.items():
            for k, c in terms:
                mats[i, j, k] = c
                mats[j, i, k] = -c
        m = np.array(rot1.matrix, dtype=float)
        # c'_{ijk} in the rotated basis must equal the original table
        pushed = np.einsum("ia,jb,abc,ck->ijk", m, m, mats, np.linalg.inv(m))
        assert np.max(np.abs(pushed - mats)) < 1e-12


def test_rotation_composition_exact():
    # quarter-turn permutation matrices compose exactly over the rationals
    g = ads_algebra(LAM)
    zero, one = Scalar(), rat(1)
    rz = [[zero, -one, zero], [one, zero, zero], [zero, zero, one]]
    rx = [[one, zero, zero], [zero, zero, -one], [zero, one, zero]]
    rot_z, rot_x = rotate_basis(g, rz), rotate_basis(g, rx)
    prod = [[sum(rz[i][m] * rx[m][j] for m in range(3)) for j in range(3)]
            for i in range(3)]
    rot_zx = rotate_basis(g, prod)
    v = _unit("P1")
    v[IDX["J2"]] = rat(5)
    assert rot_z.apply(rot_x.apply(v)) == rot_zx.apply(v)
    composed = rot_z.compose(rot_x)
    assert composed.apply(v) == rot_zx.apply(v)


def test_subalgebra_closure_and_rejection():
    g = ads_algebra(LAM)
    sub = subalgebra(g, [IDX[n] for n in ("P0", "P1", "P2", "K1", "K2", "J3")])
    assert sub.dim == 6
    with pytest.raises(NotSubalgebra):
        subalgebra(g, [IDX["P1"], IDX["K1"]])  # [K1,P1] = P0 leaves the span


def test_json_dump_keys():
    g = ads_algebra(LAM)
    data = json.loads(g.to_json())
    assert data["[J1,J2]"] == {"J3": "1"}
    assert data["[P0,P1]"] == {"K1": "-Lambda"}
