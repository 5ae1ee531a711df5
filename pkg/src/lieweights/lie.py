"""Lie algebras given by exact rational structure constants.

Basis vectors are indexed from 0 internally. The structure table maps an
ordered pair ``(i, j)`` with ``i < j`` to a sparse dict ``{k: c}`` meaning
``[X_i, X_j] = sum_k c X_k``; antisymmetry is implicit.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    JacobiViolation,
    NonCommutingDerivations,
    NotADerivation,
)
from .linalg import Subspace, Vector, mat_mul, nullspace, unit_vector, zero_vector

MAX_DIM = 64


class LieAlgebra:
    """A finite-dimensional Lie algebra over Q.

    Instances are only built through :func:`validate`, so the Jacobi identity
    always holds. Treat them as immutable.
    """

    __slots__ = ("dim", "structure", "labels", "_ad")

    def __init__(self, dim: int, structure: dict, labels: tuple[str, ...] | None = None):
        self.dim = dim
        self.structure = structure
        self.labels = labels
        self._ad = None

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.structure)})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, tuple(sorted((p, tuple(sorted(d.items()))) for p, d in self.structure.items()))))

    def constant(self, i: int, j: int, k: int) -> Fraction:
        """c_{ij}^k with antisymmetry applied."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.structure.get((i, j), {}).get(k, Fraction(0))
        return -self.structure.get((j, i), {}).get(k, Fraction(0))

    def basis_bracket(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -c for k, c in self.structure.get((j, i), {}).items()}

    def is_abelian(self) -> bool:
        return not self.structure

    def ad_matrices(self) -> list[list[list[Fraction]]]:
        """ad(X_i) as n x n matrices, column j holding [X_i, X_j]."""
        if self._ad is None:
            n = self.dim
            mats = []
            for i in range(n):
                m = [[Fraction(0)] * n for _ in range(n)]
                for j in range(n):
                    for k, c in self.basis_bracket(i, j).items():
                        m[k][j] = c
                mats.append(m)
            self._ad = mats
        return self._ad


def _normalize_table(raw: Mapping, dim: int) -> dict:
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for key, value in raw.items():
        if len(key) == 3:
            # flat form {(i, j, k): c}
            i, j, k = key
            items = {k: value}
        else:
            i, j = key
            items = value
        for k, c in items.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise IndexOutOfRange(f"bracket index ({i + 1},{j + 1},{k + 1}) outside 1..{dim}")
            c = Fraction(c)
            if i == j:
                if c != 0:
                    raise IndexOutOfRange(f"self-bracket [X{i + 1},X{i + 1}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, -c
            d = table.setdefault((i, j), {})
            d[k] = d.get(k, Fraction(0)) + c
    out = {}
    for pair, d in table.items():
        d = {k: c for k, c in sorted(d.items()) if c != 0}
        if d:
            out[pair] = d
    return dict(sorted(out.items()))


def validate(raw_structure: Mapping, dim: int, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Build a :class:`LieAlgebra` from 0-based structure constants.

    ``raw_structure`` is either ``{(i, j, k): c}`` or ``{(i, j): {k: c}}``.
    Pairs with ``i > j`` are folded in by antisymmetry. The Jacobi identity is
    checked exactly on every triple; the first failing triple is reported.
    """
    if dim < 1:
        raise DimensionMismatch("dimension must be positive")
    if dim > MAX_DIM:
        raise DimensionTooLarge(f"dimension {dim} exceeds {MAX_DIM}")
    if labels is not None and len(labels) != dim:
        raise DimensionMismatch("one label per basis vector required")
    L = LieAlgebra(dim, _normalize_table(raw_structure, dim), tuple(labels) if labels else None)
    for i, j, k in combinations(range(dim), 3):
        res = jacobi_residual(L, i, j, k)
        if any(res):
            raise JacobiViolation((i, j, k), res)
    return L


def _bracket_sparse(L: LieAlgebra, x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            if a == b:
                continue
            for k, c in L.basis_bracket(a, b).items():
                out[k] = out.get(k, Fraction(0)) + ca * cb * c
    return {k: c for k, c in out.items() if c}


def jacobi_residual(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    """[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]."""
    total: dict[int, Fraction] = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for idx, v in _bracket_sparse(L, L.basis_bracket(a, b), {c: Fraction(1)}).items():
            total[idx] = total.get(idx, Fraction(0)) + v
    return tuple(total.get(t, Fraction(0)) for t in range(L.dim))


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    if len(x) != L.dim or len(y) != L.dim:
        raise DimensionMismatch(f"expected vectors of length {L.dim}")
    xs = {i: Fraction(v) for i, v in enumerate(x) if v}
    ys = {i: Fraction(v) for i, v in enumerate(y) if v}
    res = _bracket_sparse(L, xs, ys)
    return tuple(res.get(k, Fraction(0)) for k in range(L.dim))


def bracket_subspaces(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of [u, v] over basis vectors u of a and v of b."""
    vecs = [bracket(L, u, v) for u in a.basis for v in b.basis]
    return Subspace.span(vecs, L.dim)


def derived_series(L: LieAlgebra) -> list[Subspace]:
    """D^0 = L, D^(k+1) = [D^k, D^k], stopping at the first repeated term."""
    series = [Subspace.full(L.dim)]
    while True:
        nxt = bracket_subspaces(L, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """C^1 = L, C^(k+1) = [L, C^k], stopping at the first repeated term."""
    full = Subspace.full(L.dim)
    series = [full]
    while True:
        nxt = bracket_subspaces(L, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def solvability_class(L: LieAlgebra) -> int | None:
    """Derived length s (D^s = 0, D^(s-1) != 0), or None if L is not solvable."""
    series = derived_series(L)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def center(L: LieAlgebra) -> Subspace:
    """Common kernel of all ad(X_i)."""
    rows = [row for m in L.ad_matrices() for row in m]
    return Subspace.span(nullspace(rows, L.dim), L.dim)


def derived_algebra(L: LieAlgebra) -> Subspace:
    full = Subspace.full(L.dim)
    return bracket_subspaces(L, full, full)


def is_derivation(L: LieAlgebra, matrix: Sequence[Sequence]) -> bool:
    """D[X_i,X_j] == [D X_i, X_j] + [X_i, D X_j] on every basis pair."""
    n = L.dim
    D = [[Fraction(x) for x in row] for row in matrix]
    if len(D) != n or any(len(row) != n for row in D):
        raise DimensionMismatch(f"derivation must be {n} x {n}")
    cols = [tuple(D[r][c] for r in range(n)) for c in range(n)]
    for i, j in combinations(range(n), 2):
        lhs = zero_vector(n)
        for k, c in L.basis_bracket(i, j).items():
            lhs = tuple(a + c * b for a, b in zip(lhs, cols[k]))
        rhs1 = bracket(L, cols[i], unit_vector(n, j))
        rhs2 = bracket(L, unit_vector(n, i), cols[j])
        if any(a != b + c for a, b, c in zip(lhs, rhs1, rhs2)):
            return False
    return True


def _as_matrix(d) -> list[list[Fraction]]:
    m = getattr(d, "matrix", d)
    return [[Fraction(x) for x in row] for row in m]


def semidirect_product(L: LieAlgebra, derivs: Sequence) -> LieAlgebra:
    """L extended by commuting derivations t_a with [t_a, X] = D_a X.

    The new generators get indices n, n+1, ...; the first n coordinates keep
    L's brackets unchanged.
    """
    mats = [_as_matrix(d) for d in derivs]
    if not mats:
        return L
    n = L.dim
    for a, m in enumerate(mats):
        if not is_derivation(L, m):
            raise NotADerivation(a)
    for a, b in combinations(range(len(mats)), 2):
        if mat_mul(mats[a], mats[b]) != mat_mul(mats[b], mats[a]):
            raise NonCommutingDerivations(a, b)
    table = {pair: dict(d) for pair, d in L.structure.items()}
    for a, m in enumerate(mats):
        t = n + a
        for i in range(n):
            # [X_i, t_a] = -D_a X_i
            img = {k: -m[k][i] for k in range(n) if m[k][i] != 0}
            if img:
                table[(i, t)] = img
    labels = None
    if L.labels:
        labels = L.labels + tuple(f"t{a + 1}" for a in range(len(mats)))
    return validate(table, n + len(mats), labels)
