"""Exact checks at explicit points of the Grassmannian.

A point is a :class:`RationalSubspace`: q(r) rows of rationals giving a
basis of I_r in the degree-r monomial basis.  Membership in the Hilbert
scheme is decided by Gotzmann persistence, i.e. dim I_{r+1} = q(r+1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateDimension, DimensionMismatch, RankDeficient
from .exterior import MultiIndex
from .hilbpoly import HilbertPolynomialContext
from .linalg import det, matmul, rank
from .monom import Monomial, basis, induced_action, lexsegment_degree, multiply_index, small_ring_indices
from .plucker import DeltaPolynomial, theta_to_delta

Coords = dict[MultiIndex, Fraction]


@dataclass
class RationalSubspace:
    """Row basis of a q(r)-dimensional subspace of S_r."""

    ctx: HilbertPolynomialContext
    matrix: list[list[Fraction]]

    def __post_init__(self):
        q, N = self.ctx.q_r, self.ctx.N
        self.matrix = [[Fraction(x) for x in row] for row in self.matrix]
        if len(self.matrix) != q or any(len(row) != N for row in self.matrix):
            raise DimensionMismatch(f"expected a {q} x {N} matrix")
        if rank(self.matrix) != q:
            raise RankDeficient(f"rows do not span a {q}-dimensional subspace")

    @classmethod
    def from_monomials(cls, ctx: HilbertPolynomialContext, monomials: Iterable[Monomial]) -> "RationalSubspace":
        b = basis(ctx.n, ctx.r)
        rows = []
        for m in sorted(set(map(tuple, monomials))):
            row = [Fraction(0)] * ctx.N
            row[b.index_of(m) - 1] = Fraction(1)
            rows.append(row)
        return cls(ctx, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), self.ctx.N


def lexsegment_point(ctx: HilbertPolynomialContext) -> RationalSubspace:
    return RationalSubspace.from_monomials(ctx, lexsegment_degree(ctx))


def monomial_point(ctx: HilbertPolynomialContext, monomials) -> RationalSubspace:
    return RationalSubspace.from_monomials(ctx, monomials)


# -- Plucker coordinates --------------------------------------------------


def theta_from_matrix(M: RationalSubspace) -> Coords:
    """Maximal minors Theta_K of the q x N matrix, zero entries omitted."""
    q, N = M.shape
    out = {}
    for K in combinations(range(1, N + 1), q):
        v = det([[row[k - 1] for k in K] for row in M.matrix])
        if v:
            out[K] = Fraction(v)
    if not out:
        raise RankDeficient("all maximal minors vanish")
    return out


def delta_from_matrix(M: RationalSubspace) -> Coords:
    return theta_to_delta(theta_from_matrix(M), M.ctx.N)


def projectively_equal(a: Mapping, b: Mapping) -> bool:
    """True when two coordinate vectors agree up to a nonzero scalar."""
    keys = set(k for k, v in a.items() if v) | set(k for k, v in b.items() if v)
    if not keys:
        return True
    k0 = min(keys)
    x, y = Fraction(a.get(k0, 0)), Fraction(b.get(k0, 0))
    if not x or not y:
        return False
    return all(Fraction(a.get(k, 0)) * y == Fraction(b.get(k, 0)) * x for k in keys)


def evaluate(E: DeltaPolynomial, coords: Mapping[MultiIndex, object]) -> Fraction:
    return Fraction(E.evaluate(coords))


# -- persistence oracle ---------------------------------------------------


def _lift_rows(M: RationalSubspace, variables: Iterable[int]) -> list[list[Fraction]]:
    n, r = M.ctx.n, M.ctx.r
    N1 = M.ctx.dim_S(r + 1)
    rows = []
    for i in variables:
        for row in M.matrix:
            out = [Fraction(0)] * N1
            for k, c in enumerate(row, start=1):
                if c:
                    out[multiply_index(n, r, i, k) - 1] = c
            rows.append(out)
    return rows


def persistence_rank(M: RationalSubspace) -> int:
    """dim_k (x_0 I_r + ... + x_n I_r), computed exactly."""
    return rank(_lift_rows(M, range(M.ctx.n + 1)))


def is_hilb_point(M: RationalSubspace) -> bool:
    return persistence_rank(M) == M.ctx.q(M.ctx.r + 1)


def _require_d_lt_n(ctx: HilbertPolynomialContext):
    if ctx.d >= ctx.n:
        raise DegenerateDimension(f"d = {ctx.d} >= n = {ctx.n}")


def projection_rank(M: RationalSubspace) -> int:
    """Rank of I_r projected onto the k[x_{d+1}, ..., x_n]_r coordinates."""
    _require_d_lt_n(M.ctx)
    cols = small_ring_indices(M.ctx.n, M.ctx.r, M.ctx.d)
    return rank([[row[k - 1] for k in cols] for row in M.matrix])


def block_ranks(M: RationalSubspace) -> tuple[int, int]:
    """(rank D1, rank D) for a point of U'.

    D1 is spanned by the x_0..x_d multiples, and D is what remains of the
    degree r+1 generators after removing the identity block, so
    rank D = dim I_{r+1} - dim k[x_{d+1}, ..., x_n]_{r+1}.
    """
    ctx = M.ctx
    _require_d_lt_n(ctx)
    d1 = rank(_lift_rows(M, range(ctx.d + 1)))
    small = len(small_ring_indices(ctx.n, ctx.r + 1, ctx.d))
    return d1, persistence_rank(M) - small


def in_open_U(M: RationalSubspace) -> bool:
    ctx = M.ctx
    _require_d_lt_n(ctx)
    if projection_rank(M) != len(small_ring_indices(ctx.n, ctx.r, ctx.d)):
        return False
    return rank(_lift_rows(M, range(ctx.d + 1))) >= ctx.qprime(ctx.r + 1)


# -- sampling and coordinate changes --------------------------------------

LOW, HIGH = -5, 5


def sample_pgl(n: int, seed: int) -> list[list[int]]:
    """Seeded invertible integer matrix with entries in [-5, 5]."""
    rng = random.Random(seed)
    while True:
        g = [[rng.randint(LOW, HIGH) for _ in range(n + 1)] for _ in range(n + 1)]
        if det(g):
            return g


def sample_subspace(ctx: HilbertPolynomialContext, seed: int) -> RationalSubspace:
    rng = random.Random(seed)
    q, N = ctx.q_r, ctx.N
    while True:
        rows = [[rng.randint(LOW, HIGH) for _ in range(N)] for _ in range(q)]
        if rank(rows) == q:
            return RationalSubspace(ctx, rows)


def sample_non_hilbert(ctx: HilbertPolynomialContext, seed: int, tries: int = 1000) -> RationalSubspace:
    """A seeded random point rejected by the persistence oracle."""
    rng = random.Random(seed)
    for _ in range(tries):
        M = sample_subspace(ctx, rng.getrandbits(32))
        if not is_hilb_point(M):
            return M
    raise RuntimeError("no non-Hilbert sample found")


def translate(M: RationalSubspace, g: Sequence[Sequence]) -> RationalSubspace:
    """The subspace {f(g x) : f in I_r}, computed as M . A(g)."""
    A = induced_action(M.ctx.n, M.ctx.r, [[Fraction(x) for x in row] for row in g],
                       zero=Fraction(0), one=Fraction(1))
    return RationalSubspace(M.ctx, matmul(M.matrix, A))


def act_on_coords(action, g: Sequence[Sequence], coords: Mapping[MultiIndex, object]) -> Coords:
    """Evaluate ``g.D_I`` (from :func:`hilbeq.equations.pgl_action_on_plucker`) at ``g`` and ``coords``."""
    out = {}
    for I, bp in action.items():
        total = Fraction(0)
        for key, poly in bp.terms.items():
            gv = _eval_gkey(bp.space, key, g)
            if gv:
                total += gv * Fraction(poly.evaluate(coords))
        if total:
            out[I] = total
    return out


def _eval_gkey(space, key: int, g) -> Fraction:
    v = Fraction(1)
    for k, e in enumerate(space.unpack(key)):
        if e:
            a, b = divmod(k, space.size)
            v *= Fraction(g[a][b]) ** e
    return v
