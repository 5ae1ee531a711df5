"""Derivations, the diagonal torus, and the weight system it induces.

Fundamental indices (``beta`` indices) are 1-based to match the notation
beta_1..beta_k; vertex / basis indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    MultipleWeights,
    NonIntegralWeights,
    NotADerivation,
    RankDeficient,
    ZeroRank,
)
from .lie import LieAlgebra, derived_algebra, is_derivation
from .linalg import Subspace, nullspace, rank, solve, unit_vector


@dataclass(frozen=True)
class Derivation:
    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def checked(cls, L: LieAlgebra, matrix, index: int = 0) -> "Derivation":
        m = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if not is_derivation(L, m):
            raise NotADerivation(index)
        return cls(m)

    @property
    def is_diagonal(self) -> bool:
        return all(x == 0 for r, row in enumerate(self.matrix) for c, x in enumerate(row) if r != c)


def diagonal_matrix(d: Sequence) -> tuple[tuple[Fraction, ...], ...]:
    n = len(d)
    return tuple(tuple(Fraction(d[r]) if r == c else Fraction(0) for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class Torus:
    """Commuting diagonal derivations, stored by their diagonals."""

    rank: int
    generators: tuple[tuple[Fraction, ...], ...]

    def derivations(self, indices: Sequence[int] | None = None) -> list[Derivation]:
        """Generators as matrices; ``indices`` are 1-based and select a subtorus."""
        picks = range(1, self.rank + 1) if indices is None else indices
        out = []
        for i in picks:
            if not 1 <= i <= self.rank:
                raise IndexOutOfRange(f"torus index {i} outside 1..{self.rank}")
            out.append(Derivation(diagonal_matrix(self.generators[i - 1])))
        return out


@dataclass(frozen=True)
class WeightSystem:
    """Weights of a torus on a basis with one-dimensional weight spaces.

    ``weights[j]`` is the weight of basis vector X_j in coordinates with
    respect to the fundamental weights; ``fundamental_indices[i - 1]`` is the
    vertex carrying beta_i. ``graded`` records whether every coordinate is a
    nonnegative integer.
    """

    rank: int
    weights: tuple[tuple[int, ...], ...]
    fundamental_indices: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise RankDeficient("weight system rank must be positive")
        if any(len(w) != self.rank for w in self.weights):
            raise RankDeficient(f"every weight needs {self.rank} coordinates")
        seen: dict[tuple[int, ...], int] = {}
        for j, w in enumerate(self.weights):
            if w in seen:
                raise MultipleWeights(seen[w], j)
            seen[w] = j
        if len(self.fundamental_indices) != self.rank:
            raise RankDeficient("one fundamental index per torus coordinate required")
        for i, v in enumerate(self.fundamental_indices):
            if tuple(self.weights[v]) != tuple(1 if t == i else 0 for t in range(self.rank)):
                raise RankDeficient(f"vertex {v + 1} does not carry beta_{i + 1}")

    @classmethod
    def from_vectors(cls, weights: Sequence[Sequence[int]], rank: int | None = None) -> "WeightSystem":
        """Build from raw integer vectors, locating the standard basis vectors."""
        ws = tuple(tuple(int(x) for x in w) for w in weights)
        if not ws:
            raise RankDeficient("empty weight system")
        k = len(ws[0]) if rank is None else rank
        fund = []
        for i in range(k):
            e = tuple(1 if t == i else 0 for t in range(k))
            if e not in ws:
                raise RankDeficient(f"beta_{i + 1} is not among the weights")
            fund.append(ws.index(e))
        return cls(k, ws, tuple(fund))

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def graded(self) -> bool:
        return all(x >= 0 for w in self.weights for x in w)

    def index_of(self, w: Sequence[int]) -> int | None:
        try:
            return self.weights.index(tuple(w))
        except ValueError:
            return None


def derivation_space(L: LieAlgebra) -> list[Derivation]:
    """Basis of Der(L): solve D[X_i,X_j] = [DX_i,X_j] + [X_i,DX_j] for i < j.

    The unknown D[r][c] sits at position r * n + c.
    """
    n = L.dim
    rows = []
    for i, j in combinations(range(n), 2):
        for m in range(n):
            row = [Fraction(0)] * (n * n)
            for k, c in L.basis_bracket(i, j).items():
                row[m * n + k] += c
            # [D X_i, X_j]_m = sum_a D[a][i] c_{aj}^m
            for a in range(n):
                c = L.constant(a, j, m)
                if c:
                    row[a * n + i] -= c
                c = L.constant(i, a, m)
                if c:
                    row[a * n + j] -= c
            if any(row):
                rows.append(row)
    basis = nullspace(rows, n * n)
    return [Derivation(tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n))) for v in basis]


def diagonal_torus(L: LieAlgebra) -> Torus:
    """Diagonal derivations: d_i + d_j = d_k whenever c_ij^k != 0."""
    n = L.dim
    rows = []
    for (i, j), d in L.structure.items():
        for k in d:
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[k] -= 1
            rows.append(row)
    sol = nullspace(rows, n)
    if not sol:
        raise ZeroRank("no nonzero diagonal derivation; the basis is not weight-adapted")
    gens = Subspace.span(sol, n).basis
    return Torus(len(gens), gens)


def _generator_indices(L: LieAlgebra) -> list[int]:
    dl = derived_algebra(L)
    return [j for j in range(L.dim) if not dl.contains(unit_vector(L.dim, j))]


def _coordinates(raw: list[tuple[Fraction, ...]], fund: Sequence[int]) -> list[tuple[Fraction, ...]] | None:
    k = len(fund)
    # solve c * F = w, i.e. F^T c^T = w^T
    ft = [[raw[f][r] for f in fund] for r in range(len(raw[0]))]
    out = []
    for w in raw:
        c = solve(ft, w, k)
        if c is None:
            return None
        out.append(c)
    return out


def weight_system(L: LieAlgebra, T: Torus | None = None) -> WeightSystem:
    """Weights of the basis vectors of L under T in fundamental coordinates.

    Fundamental weights are taken from basis vectors outside [L, L]. Among the
    independent choices (in lexicographic order) the first one giving
    nonnegative integer coordinates wins; if none does, the first integral
    choice is used and the result has ``graded == False``.
    """
    if T is None:
        T = diagonal_torus(L)
    n, k = L.dim, T.rank
    raw = [tuple(T.generators[i][j] for i in range(k)) for j in range(n)]
    seen: dict[tuple, int] = {}
    for j, w in enumerate(raw):
        if w in seen:
            raise MultipleWeights(seen[w], j)
        seen[w] = j
    if rank(raw, k) != k:
        raise RankDeficient("torus generators give dependent weights")
    gens = _generator_indices(L)
    fallback = None
    independent = False
    for fund in combinations(gens, k):
        if rank([raw[f] for f in fund], k) != k:
            continue
        independent = True
        coords = _coordinates(raw, fund)
        if coords is None or any(x.denominator != 1 for c in coords for x in c):
            continue
        ints = tuple(tuple(int(x) for x in c) for c in coords)
        if all(x >= 0 for c in ints for x in c):
            return WeightSystem(k, ints, tuple(fund), L.labels)
        if fallback is None:
            fallback = (ints, tuple(fund))
    if fallback is not None:
        return WeightSystem(k, fallback[0], fallback[1], L.labels)
    if not independent:
        raise RankDeficient("weights of the generators outside [L,L] do not span the weight lattice")
    raise NonIntegralWeights("no choice of fundamental weights gives integral coordinates")


def fundamental_torus(ws: WeightSystem) -> Torus:
    """Torus generators dual to beta_1..beta_k: t_i acts on X_j by l_{beta_i}(weight_j)."""
    gens = tuple(tuple(Fraction(w[i]) for w in ws.weights) for i in range(ws.rank))
    return Torus(ws.rank, gens)


def beta_length(w: Sequence[int], i: int) -> int:
    """Coefficient of beta_i (1-based) in w."""
    if not 1 <= i <= len(w):
        raise IndexOutOfRange(f"beta index {i} outside 1..{len(w)}")
    return w[i - 1]


def support_set(ws: WeightSystem, i: int) -> frozenset[int]:
    """E(beta_i): vertices whose beta_i-length is at least 1."""
    if not 1 <= i <= ws.rank:
        raise IndexOutOfRange(f"beta index {i} outside 1..{ws.rank}")
    return frozenset(j for j, w in enumerate(ws.weights) if w[i - 1] >= 1)


def check_condition1(L: LieAlgebra, ws: WeightSystem) -> tuple[bool, list[tuple[int, int]]]:
    """Every weight-sum relation alpha + beta = gamma must be carried by a nonzero bracket.

    Stand-in for the minimal-presentation condition. ``ws`` must list the
    weights in basis order. Returns the verdict and the failing vertex pairs.
    """
    failures = []
    for a, b in combinations(range(ws.size), 2):
        s = tuple(x + y for x, y in zip(ws.weights[a], ws.weights[b]))
        c = ws.index_of(s)
        if c is not None and L.constant(a, b, c) == 0:
            failures.append((a, b))
    return not failures, failures
