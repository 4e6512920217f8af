"""The 10-dimensional kinematical Lie algebra family and basis rotations.

Generators are ordered ``P0, P1, P2, P3, K1, K2, K3, J1, J2, J3`` (time
translation, space translations, boosts, rotations); the indices 0..9 are
stable across the whole package.  Structure constants live in a sparse map
``(i, j) with i < j -> [(k, coeff), ...]``; coefficients are exact
:class:`~kads.scalars.Scalar` values or plain floats, and every routine
here is generic over that choice.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .scalars import Scalar, reduce_mod

BASIS = ("P0", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3")
DIM = len(BASIS)
IDX = {name: i for i, name in enumerate(BASIS)}

_EPS = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
        (3, 2, 1): -1, (1, 3, 2): -1, (2, 1, 3): -1}


class NotSubalgebra(ValueError):
    """The given generator set does not close under the bracket."""


class NotOrthogonal(ValueError):
    """A rotation matrix failed the orthogonality check."""


def is_exact(c) -> bool:
    return isinstance(c, (Scalar, int, Fraction))


def coeff_norm(c) -> float | int:
    """Residual size: 1/0 for exact coefficients, |c| for floats."""
    if isinstance(c, Scalar):
        return 0 if c.is_zero() else 1
    if isinstance(c, (int, Fraction)):
        return 0 if c == 0 else 1
    return abs(c)


def components_norm(values) -> float | int:
    """Count of nonzero entries (exact) or max |entry| (numeric)."""
    vals = list(values)
    if not vals:
        return 0
    if all(is_exact(v) for v in vals):
        return sum(1 for v in vals if coeff_norm(v) != 0)
    return max(float(coeff_norm(v)) for v in vals)


class LieAlgebra:
    """Structure-constant table, immutable after construction."""

    def __init__(self, structure: dict, dim: int = DIM, labels=BASIS):
        self.dim = dim
        self.labels = tuple(labels)
        table = {}
        for (i, j), terms in structure.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad index pair {(i, j)}")
            kept = [(k, c) for k, c in terms if coeff_norm(c) != 0]
            if kept:
                table[(i, j)] = tuple(kept)
        self.structure = table

    def bracket_basis(self, i: int, j: int):
        """[T_i, T_j] as a list of (k, coeff), any index order."""
        if i == j:
            return []
        if i < j:
            return list(self.structure.get((i, j), ()))
        return [(k, -c) for k, c in self.structure.get((j, i), ())]

    def bracket(self, x, y):
        """Bilinear extension to coefficient vectors of length dim."""
        out = [None] * self.dim
        for i, xi in enumerate(x):
            if coeff_norm(xi) == 0:
                continue
            for j, yj in enumerate(y):
                if coeff_norm(yj) == 0:
                    continue
                for k, c in self.bracket_basis(i, j):
                    term = xi * yj * c
                    out[k] = term if out[k] is None else out[k] + term
        zero = 0.0 if any(not is_exact(v) for v in x + y if v is not None) else Scalar()
        return [zero if v is None else v for v in out]

    def eval_numeric(self, values: dict) -> "LieAlgebra":
        """Substitute numbers for the formal parameters in the table."""
        structure = {}
        for (i, j), terms in self.structure.items():
            structure[(i, j)] = [
                (k, c.eval_numeric(values) if isinstance(c, Scalar) else float(c))
                for k, c in terms
            ]
        return LieAlgebra(structure, self.dim, self.labels)

    def to_json(self) -> str:
        """Audit dump keyed "[Ti,Tj]"."""
        out = {}
        for (i, j), terms in sorted(self.structure.items()):
            key = f"[{self.labels[i]},{self.labels[j]}]"
            out[key] = {self.labels[k]: str(c) for k, c in terms}
        return json.dumps(out, sort_keys=True, indent=1)


def ads_algebra(lam) -> LieAlgebra:
    """Kinematical algebra with cosmological constant ``lam``.

    ``lam`` may be an exact Scalar (or int/Fraction) or a float; the zero
    value gives the flat-spacetime algebra.
    """
    if isinstance(lam, (int, Fraction)):
        lam = Scalar.rational(lam)
    exact = isinstance(lam, Scalar)
    one = Scalar.rational(1) if exact else 1.0
    neg = lambda c: -c

    structure: dict = {}

    def put(a: str, b: str, *terms):
        i, j = IDX[a], IDX[b]
        if i > j:
            i, j = j, i
            terms = [(k, neg(c)) for k, c in terms]
        else:
            terms = list(terms)
        structure[(i, j)] = structure.get((i, j), ()) + tuple(
            (IDX[k] if isinstance(k, str) else k, c) for k, c in terms)

    for (a, b, c), s in _EPS.items():
        # mixed brackets run over every ordered index pair
        put(f"J{a}", f"P{b}", (f"P{c}", s * one))
        put(f"J{a}", f"K{b}", (f"K{c}", s * one))
        if a < b:
            put(f"J{a}", f"J{b}", (f"J{c}", s * one))
            put(f"K{a}", f"K{b}", (f"J{c}", neg(s * one)))
            put(f"P{a}", f"P{b}", (f"J{c}", s * lam))
    for a in (1, 2, 3):
        put(f"K{a}", "P0", (f"P{a}", one))
        put(f"K{a}", f"P{a}", ("P0", one))
        put("P0", f"P{a}", (f"K{a}", neg(lam)))
    return LieAlgebra(structure)


def jacobi_residual(g: LieAlgebra):
    """Max residual of [[x,y],z] + cyclic over all basis triples."""
    worst: list = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(j + 1, g.dim):
                acc: dict = {}
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, cab in g.bracket_basis(a, b):
                        for n, cmc in g.bracket_basis(m, c):
                            cur = acc.get(n)
                            term = cab * cmc
                            acc[n] = term if cur is None else cur + term
                worst.extend(acc.values())
    return components_norm(worst) if worst else 0


def subalgebra(g: LieAlgebra, indices) -> LieAlgebra:
    """Restrict to a generator subset; raises NotSubalgebra if not closed."""
    indices = list(indices)
    pos = {gi: p for p, gi in enumerate(indices)}
    structure = {}
    for a, gi in enumerate(indices):
        for b in range(a + 1, len(indices)):
            gj = indices[b]
            terms = []
            for k, c in g.bracket_basis(gi, gj):
                if k not in pos:
                    raise NotSubalgebra(
                        f"[{g.labels[gi]},{g.labels[gj]}] leaves the span")
                terms.append((pos[k], c))
            if terms:
                structure[(a, b)] = tuple(terms)
    return LieAlgebra(structure, dim=len(indices),
                      labels=[g.labels[i] for i in indices])


class BasisRotation:
    """Automorphism with P0 fixed and each of (P, K, J) rotated by R.

    The generator map reads off columns: phi(T_j) = sum_i M[i][j] T_i, so
    coefficient vectors transform as v -> M v and composition follows the
    matrix product: rotate(R2) after rotate(R1) equals rotate(R2 R1).
    """

    def __init__(self, matrix):
        self.matrix = [list(row) for row in matrix]

    def apply(self, vec):
        """Rotate a coefficient vector: standard matrix-vector product."""
        dim = len(self.matrix)
        out = [None] * dim
        for j, xj in enumerate(vec):
            if coeff_norm(xj) == 0:
                continue
            for i in range(dim):
                mij = self.matrix[i][j]
                if coeff_norm(mij) == 0:
                    continue
                term = mij * xj
                out[i] = term if out[i] is None else out[i] + term
        zero = Scalar() if all(is_exact(v) for v in vec) and all(
            is_exact(m) for row in self.matrix for m in row) else 0.0
        return [zero if v is None else v for v in out]

    def generator_image(self, j: int):
        """Coefficients of phi(T_j): the j-th column."""
        return [row[j] for row in self.matrix]

    def compose(self, other: "BasisRotation") -> "BasisRotation":
        """self after other: matrix product self.matrix @ other.matrix."""
        n = len(self.matrix)
        prod = [[sum(self.matrix[i][m] * other.matrix[m][j] for m in range(n))
                 for j in range(n)] for i in range(n)]
        return BasisRotation(prod)


def rotate_basis(g: LieAlgebra, r3, rules=None, tol: float = 1e-12) -> BasisRotation:
    """Lift a 3x3 rotation to the basis automorphism (P0 fixed).

    ``r3`` is a 3x3 orthogonal matrix of Scalars or floats.  Orthogonality
    is checked exactly (after ``rules``-rewriting when given) or to ``tol``.
    """
    exact = all(is_exact(e) for row in r3 for e in row)

    def simp(c):
        if rules is not None and isinstance(c, Scalar):
            return reduce_mod(c, rules)
        return c

    one = Scalar.rational(1) if exact else 1.0
    for a in range(3):
        for b in range(3):
            dot = simp(sum(r3[a][i] * r3[b][i] for i in range(3)))
            expect = one if a == b else (Scalar() if exact else 0.0)
            if coeff_norm(dot - expect) > (0 if exact else tol):
                raise NotOrthogonal(f"R^T R != I at entry {(a, b)}")

    zero = Scalar() if exact else 0.0
    m = [[zero] * DIM for _ in range(DIM)]
    m[0][0] = one
    for block in (1, 4, 7):  # P, K, J triples
        for a in range(3):
            for b in range(3):
                m[block + a][block + b] = r3[a][b]
    rot = BasisRotation(m)

    # automorphism check: [phi(Ti), phi(Tj)] == phi([Ti, Tj])
    for i in range(DIM):
        ei = [one if t == i else zero for t in range(DIM)]
        for j in range(i + 1, DIM):
            ej = [one if t == j else zero for t in range(DIM)]
            lhs = g.bracket(rot.apply(ei), rot.apply(ej))
            rhs_vec = [zero] * DIM
            for k, c in g.bracket_basis(i, j):
                rhs_vec[k] = rhs_vec[k] + c
            rhs = rot.apply(rhs_vec)
            for a in range(DIM):
                if coeff_norm(simp(lhs[a] - rhs[a])) > (0 if exact else tol):
                    raise NotOrthogonal(
                        f"rotation is not an automorphism at [{BASIS[i]},{BASIS[j]}]")
    return rot
