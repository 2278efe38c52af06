"""Equation families cutting out the Hilbert scheme inside the Grassmannian.

* ``IK``: maximal minors of the matrix whose rows are the lifted degree-1
  generators ``x_i delta^1_J`` (degree q(r+1)+1).
* ``BAYER``: coefficients of ``x_0 delta^{m_0} ^ ... ^ x_n delta^{m_n}`` with
  sum m_i = q(r+1)+1 (degree <= n+1).
* ``BLMR_LOCAL_T1`` / ``BLMR_LOCAL_T2``: local equations on the chart U
  (degree <= d+2), and ``BLMR_FULL``: their coefficients under a generic
  change of coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import BadComposition, DegenerateDimension, SelectionSizeMismatch
from .exterior import ExteriorElement, MultiIndex, complement, sign_of_concat, wedge, wedge_all
from .gpoly import GPoly, GSpace
from .hilbpoly import HilbertPolynomialContext
from .monom import basis, induced_action, small_ring_indices
from .plucker import DeltaPolynomial, delta_gen, normalize_set, xi_delta

log = logging.getLogger(__name__)

FAMILIES = ("IK", "BAYER", "BLMR_LOCAL_T1", "BLMR_LOCAL_T2", "BLMR_FULL")


@dataclass
class EquationSet:
    """Normalized coefficients of one equation family.

    One entry per nonzero coefficient, in emission order.  Coefficients of
    different products may coincide; :meth:`distinct` collapses them.
    """

    family: str
    ctx: HilbertPolynomialContext
    polynomials: list[DeltaPolynomial]
    complete: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def __len__(self):
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)

    @property
    def delta_degree(self) -> int:
        return max((p.degree for p in self.polynomials), default=0)

    def distinct(self) -> list[DeltaPolynomial]:
        return normalize_set(self.polynomials)


def _equation_set(family, ctx, polys, complete=True, dedup=False) -> EquationSet:
    if dedup:
        out = normalize_set(polys)
    else:
        out = [p.normalize() for p in polys if p]
    return EquationSet(family, ctx, out, complete)


# -- Iarrobino-Kleiman ----------------------------------------------------


@dataclass
class SymbolicMatrix:
    """Rows of DeltaPolynomial entries over the degree-(r+1) monomial basis."""

    labels: list[str]
    rows: list[dict[int, DeltaPolynomial]]
    ncols: int
    column_labels: list[str] = field(default_factory=list)
    minor_size: int | None = None

    def __len__(self):
        return len(self.rows)

    def entry(self, i: int, j: int):
        """Entry at 0-based row ``i`` and 1-based column ``j``."""
        return self.rows[i].get(j, DeltaPolynomial())

    def dense(self) -> list[list[DeltaPolynomial]]:
        return [[self.entry(i, j) for j in range(1, self.ncols + 1)] for i in range(len(self.rows))]


def var_name(n: int, i: int, names=None) -> str:
    return names[i] if names else f"x{i}"


def row_label(n: int, i: int, m: int, J: Sequence[int], names=None) -> str:
    return f"{var_name(n, i, names)}*delta{m}[{','.join(map(str, J))}]"


def ik_row(ctx: HilbertPolynomialContext, i: int, J: Sequence[int]) -> dict[int, DeltaPolynomial]:
    elem = xi_delta(ctx, i, 1, J)
    return {key[0]: c for key, c in elem.terms.items()}


def ik_matrix(ctx: HilbertPolynomialContext, selection: Iterable[tuple[int, Sequence[int]]] | None = None,
              names=None) -> SymbolicMatrix:
    """Rows ``x_i delta^1_J`` for i = n..0 and all J of size p(r)+1.

    ``selection`` restricts to explicit ``(i, J)`` pairs, in the given order.
    """
    n, N = ctx.n, ctx.N
    if selection is None:
        selection = [(i, J) for i in range(n, -1, -1) for J in combinations(range(1, N + 1), ctx.p_r + 1)]
    labels, rows = [], []
    for i, J in selection:
        labels.append(row_label(n, i, 1, J, names))
        rows.append(ik_row(ctx, i, tuple(J)))
    b = basis(n, ctx.r + 1)
    return SymbolicMatrix(labels, rows, len(b), b.labels(names), ctx.q(ctx.r + 1) + 1)


def symbolic_det(entries: Sequence[Sequence]) -> DeltaPolynomial:
    """Determinant by Laplace expansion along columns, memoized on row subsets."""
    k = len(entries)
    if any(len(r) != k for r in entries):
        raise SelectionSizeMismatch("matrix is not square")
    if k == 0:
        return DeltaPolynomial.constant(1)
    memo: dict[int, DeltaPolynomial] = {}

    def rec(col: int, used: int) -> DeltaPolynomial:
        if col == k:
            return DeltaPolynomial.constant(1)
        if used in memo:
            return memo[used]
        total = DeltaPolynomial()
        sign = 1
        for i in range(k):
            if used >> i & 1:
                continue
            a = entries[i][col]
            if a:
                sub = rec(col + 1, used | (1 << i))
                if sub:
                    t = a * sub
                    total = total + (t if sign > 0 else -t)
            sign = -sign
        memo[used] = total
        return total

    return rec(0, 0)


def ik_minors(matrix: SymbolicMatrix, row_selection: Sequence[int], column_selection: Sequence[int]) -> DeltaPolynomial:
    """Minor on 0-based rows and 1-based columns, of size ``matrix.minor_size`` when set."""
    if len(row_selection) != len(column_selection):
        raise SelectionSizeMismatch(
            f"{len(row_selection)} rows but {len(column_selection)} columns selected"
        )
    k = matrix.minor_size
    if k is not None and len(row_selection) != k:
        raise SelectionSizeMismatch(f"selection of size {len(row_selection)}, expected {k}")
    sub = [[matrix.entry(i, j) for j in column_selection] for i in row_selection]
    return symbolic_det(sub)


def ik_stream(ctx: HilbertPolynomialContext, budget: int, matrix: SymbolicMatrix | None = None
              ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], DeltaPolynomial]]:
    """Minors of size q(r+1)+1 in lexicographic (rows, columns) order.

    Yields ``(rows, cols, minor)`` for at most ``budget`` selections,
    zero minors included.
    """
    matrix = matrix or ik_matrix(ctx)
    k = ctx.q(ctx.r + 1) + 1
    count = 0
    for rows in combinations(range(len(matrix)), k):
        for cols in combinations(range(1, matrix.ncols + 1), k):
            if count >= budget:
                return
            count += 1
            if any(not any(matrix.rows[i].get(j) for j in cols) for i in rows):
                yield rows, cols, DeltaPolynomial()
                continue
            yield rows, cols, ik_minors(matrix, rows, cols)


def ik_equations(ctx: HilbertPolynomialContext, budget: int, dedup: bool = False) -> EquationSet:
    polys = []
    exhausted = True
    total = 0
    for _, _, minor in ik_stream(ctx, budget + 1):
        total += 1
        if total > budget:
            exhausted = False
            break
        polys.append(minor)
    return _equation_set("IK", ctx, polys, complete=exhausted, dedup=dedup)


# -- Bayer ----------------------------------------------------------------


@lru_cache(maxsize=4096)
def _lifted(ctx: HilbertPolynomialContext, i: int, m: int, J: MultiIndex) -> ExteriorElement:
    return xi_delta(ctx, i, m, J)


Factor = tuple[int, int, MultiIndex]  # (variable index i, step m, J)


def wedge_factors(ctx: HilbertPolynomialContext, factors: Sequence[Factor]) -> ExteriorElement:
    """``x_{i_1} delta^{m_1}_{J_1} ^ x_{i_2} delta^{m_2}_{J_2} ^ ...`` (m = 0 skipped)."""
    elems = [_lifted(ctx, i, m, tuple(J)) for i, m, J in factors if m]
    return wedge_all(elems, dim=ctx.dim_S(ctx.r + 1))


def _compositions(total: int, parts: int, cap: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def bayer_tuples(ctx: HilbertPolynomialContext) -> Iterator[tuple[Factor, ...]]:
    """Every admissible tuple, variables x_n first, compositions descending."""
    n, N, p = ctx.n, ctx.N, ctx.p_r
    target = ctx.q(ctx.r + 1) + 1
    for ms in _compositions(target, n + 1, ctx.q_r):
        pools = []
        for k, m in enumerate(ms):
            i = n - k
            if m:
                pools.append([(i, m, J) for J in combinations(range(1, N + 1), p + m)])
        yield from product(*pools)


def check_bayer_tuple(ctx: HilbertPolynomialContext, factors: Sequence[Factor]):
    total = sum(m for _, m, _ in factors)
    if total != ctx.q(ctx.r + 1) + 1:
        raise BadComposition(f"steps sum to {total}, expected {ctx.q(ctx.r + 1) + 1}")
    for i, m, J in factors:
        if m > ctx.q_r or m < 0:
            raise BadComposition(f"step {m} outside 0..{ctx.q_r}")
        if len(J) != ctx.p_r + m and m:
            raise BadComposition(f"|J| = {len(J)} does not match p(r) + m = {ctx.p_r + m}")
    used = [i for i, m, _ in factors if m]
    if len(set(used)) != len(used):
        raise BadComposition("each variable may appear once")


def bayer_coefficients(ctx: HilbertPolynomialContext, factors: Sequence[Factor]) -> list[DeltaPolynomial]:
    """All wedge-basis coefficients of one tuple, in basis order."""
    check_bayer_tuple(ctx, factors)
    w = wedge_factors(ctx, factors)
    return [c for _, c in sorted(w.terms.items())]


def bayer_equations(ctx: HilbertPolynomialContext, selector="all", budget: int | None = None,
                    dedup: bool = False) -> EquationSet:
    """Bayer equations for explicit tuples, or all tuples when ``selector == "all"``."""
    tuples = bayer_tuples(ctx) if selector == "all" else selector
    polys = []
    complete = True
    for k, factors in enumerate(tuples):
        if budget is not None and k >= budget:
            complete = False
            break
        polys.extend(bayer_coefficients(ctx, factors))
    return _equation_set("BAYER", ctx, polys, complete, dedup=dedup)


# -- BLMR local equations -------------------------------------------------


def _outside_small_ring(ctx: HilbertPolynomialContext) -> list[int]:
    """Indices of degree-r monomials divisible by some x_i with i <= d."""
    small = set(small_ring_indices(ctx.n, ctx.r, ctx.d))
    return [k for k in range(1, ctx.N + 1) if k not in small]


def _require_d_lt_n(ctx: HilbertPolynomialContext):
    if ctx.d >= ctx.n:
        raise DegenerateDimension(f"d = {ctx.d} >= n = {ctx.n}")


def _d1_products(ctx: HilbertPolynomialContext) -> Iterator[tuple[tuple[Factor, ...], ExteriorElement]]:
    """All wedges ``x_0 delta^{m_0}_{J_0} ^ ... ^ x_d delta^{m_d}_{J_d}``, sum m_i = q'(r+1)."""
    d, N, p = ctx.d, ctx.N, ctx.p_r
    target = ctx.qprime(ctx.r + 1)
    for ms in _compositions(target, d + 1, ctx.q_r):
        pools = []
        for i, m in enumerate(ms):
            if m:
                pools.append([(i, m, J) for J in combinations(range(1, N + 1), p + m)])
        for factors in product(*pools):
            w = wedge_factors(ctx, factors)
            if w:
                yield factors, w


def blmr_t1_elements(ctx: HilbertPolynomialContext) -> list[tuple[str, ExteriorElement]]:
    """The lifted elements ``x_j delta^1_K`` wedged against the D1 products."""
    _require_d_lt_n(ctx)
    out = []
    for K in combinations(_outside_small_ring(ctx), ctx.p_r + 1):
        for j in range(ctx.n, ctx.d, -1):
            out.append((row_label(ctx.n, j, 1, K), _lifted(ctx, j, 1, K)))
    return out


def blmr_t2_differences(ctx: HilbertPolynomialContext, names=None) -> list[tuple[str, ExteriorElement]]:
    """Elements ``x_j' delta^1_{H u h} - x_j delta^1_{H u h'}`` with j > j'.

    Here x^alpha(h) = x_j x^gamma and x^alpha(h') = x_j' x^gamma for a
    monomial gamma of degree r-1 in x_{d+1}..x_n.
    """
    _require_d_lt_n(ctx)
    n, d, r = ctx.n, ctx.d, ctx.r
    deg_r = basis(n, r)
    gammas = [basis(n, r - 1).monomial_of(k) for k in small_ring_indices(n, r - 1, d)]
    out = []
    for H in combinations(_outside_small_ring(ctx), ctx.p_r):
        for gamma in gammas:
            for j in range(n, d, -1):
                for j2 in range(j - 1, d, -1):
                    h = deg_r.index_of(tuple(e + (v == j) for v, e in enumerate(gamma)))
                    h2 = deg_r.index_of(tuple(e + (v == j2) for v, e in enumerate(gamma)))
                    if h in H or h2 in H:
                        continue
                    H1 = tuple(sorted(H + (h,)))
                    H2 = tuple(sorted(H + (h2,)))
                    elem = _lifted(ctx, j2, 1, H1) - _lifted(ctx, j, 1, H2)
                    label = f"{row_label(n, j2, 1, H1, names)}-{row_label(n, j, 1, H2, names)}"
                    out.append((label, elem))
    return out


def _blmr_local(ctx, family, elements, dedup=False) -> EquationSet:
    polys = []
    for _, left in _d1_products(ctx):
        for _, elem in elements:
            w = wedge(left, elem)
            polys.extend(w.terms[k] for k in sorted(w.terms))
    return _equation_set(family, ctx, polys, dedup=dedup)


def blmr_t1(ctx: HilbertPolynomialContext, dedup: bool = False) -> EquationSet:
    return _blmr_local(ctx, "BLMR_LOCAL_T1", blmr_t1_elements(ctx), dedup)


def blmr_t2(ctx: HilbertPolynomialContext, dedup: bool = False) -> EquationSet:
    return _blmr_local(ctx, "BLMR_LOCAL_T2", blmr_t2_differences(ctx), dedup)


# -- PGL action and global equations --------------------------------------


class BigradedPolynomial:
    """Polynomial in g_{a,b} whose coefficients are DeltaPolynomials.

    Keys are packed g-exponent vectors (see :class:`hilbeq.gpoly.GSpace`).
    """

    def __init__(self, space: GSpace, terms: dict[int, DeltaPolynomial] | None = None):
        self.space = space
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(g-exponent tuple, DeltaPolynomial) pairs."""
        for key in sorted(self.terms):
            yield self.space.unpack(key), self.terms[key]

    def g_degrees(self) -> set[int]:
        return {sum(self.space.unpack(k)) for k in self.terms}

    def delta_degrees(self) -> set[int]:
        return set().union(*(p.degrees() for p in self.terms.values())) if self.terms else set()

    def coefficients(self) -> list[DeltaPolynomial]:
        return [self.terms[k] for k in sorted(self.terms)]


def generic_matrix(n: int) -> tuple[GSpace, list[list[GPoly]]]:
    space = GSpace(n + 1)
    g = [[space.var(a, b) for b in range(1, n + 2)] for a in range(1, n + 2)]
    return space, g


def induced_action_symbolic(n: int, t: int) -> tuple[GSpace, list[list[GPoly]]]:
    """The action of a generic g on S_t, entries polynomials in g_{a,b}."""
    space, g = generic_matrix(n)
    return space, induced_action(n, t, g, zero=GPoly(), one=GPoly({0: 1}))


def _wedge_rows(rows: Sequence[Sequence[GPoly]], H: Sequence[int], N: int, memo: dict) -> ExteriorElement:
    """Wedge of the rows ``H`` (1-based) as an element with GPoly coefficients."""
    H = tuple(H)
    if H in memo:
        return memo[H]
    vec = ExteriorElement(1, N, {(k,): c for k, c in enumerate(rows[H[-1] - 1], start=1) if c})
    if len(H) == 1:
        out = vec
    else:
        out = wedge(_wedge_rows(rows, H[:-1], N, memo), vec)
    memo[H] = out
    return out


def pgl_action_on_plucker(ctx: HilbertPolynomialContext) -> dict[MultiIndex, BigradedPolynomial]:
    """``g.D_I`` for every Plücker variable, as bigraded polynomials.

    Each basis vector x^beta in the top generator delta^{q(r)}_{1..N} is
    replaced by g.x^beta; ``g.D_I`` is the coefficient of the wedge basis
    element that carries ``D_I`` in the original generator.
    """
    n, r, N, p = ctx.n, ctx.r, ctx.N, ctx.p_r
    space, A = induced_action_symbolic(n, r)
    linear = _pgl_linear_forms(ctx, space, A)
    out = {}
    for I2, forms in linear.items():
        terms: dict[int, DeltaPolynomial] = {}
        for I, gp in forms:
            var = DeltaPolynomial.var(I)
            for key, c in gp.terms.items():
                terms[key] = terms[key] + var * c if key in terms else var * c
        out[I2] = BigradedPolynomial(space, terms)
    return out


def _pgl_linear_forms(ctx, space, A) -> dict[MultiIndex, list[tuple[MultiIndex, GPoly]]]:
    """``g.D_{I'} = sum_I c_{I',I}(g) D_I`` as lists of (I, c_{I',I})."""
    N, p = ctx.N, ctx.p_r
    full = tuple(range(1, N + 1))
    top = delta_gen(ctx, N - p, full)
    memo: dict = {}
    # coefficient of e_{H'} in g.delta^q: sum over I of eps(H|I) D_I * minor(H, H')
    acc: dict[MultiIndex, list[tuple[MultiIndex, GPoly]]] = {}
    for H, coeff in top.terms.items():
        ((I, sgn),) = coeff.terms.items()
        I = I[0]
        img = _wedge_rows(A, H, N, memo)
        for H2, minor in img.terms.items():
            acc.setdefault(H2, []).append((I, minor * sgn))
    out = {}
    for H2, forms in acc.items():
        I2 = complement(H2, N)
        s = sign_of_concat(H2, I2)
        out[I2] = [(I, gp * s) for I, gp in sorted(forms)]
    return out


@lru_cache(maxsize=8)
def _pgl_cache(ctx: HilbertPolynomialContext):
    space, A = induced_action_symbolic(ctx.n, ctx.r)
    linear = _pgl_linear_forms(ctx, space, A)
    # regroup by g-monomial: D'_{I'} = sum_key g^key * (sum_I c D_I)
    grouped = {}
    for I2, forms in linear.items():
        by_key: dict[int, dict[MultiIndex, int]] = {}
        for I, gp in forms:
            for key, c in gp.terms.items():
                by_key.setdefault(key, {})[I] = c
        grouped[I2] = list(by_key.items())
    return space, grouped


def _transform(ctx: HilbertPolynomialContext, P: DeltaPolynomial) -> dict[int, dict[tuple, int]]:
    """``P(g.D)`` as {packed g-monomial: {Delta-monomial: coeff}}."""
    _, grouped = _pgl_cache(ctx)
    result: dict[int, dict[tuple, int]] = {}
    for mono, coeff in P.sorted_terms():
        # expand the product of the transformed variables one factor at a time
        partial: dict[int, dict[tuple, int]] = {0: {(): coeff}}
        for var in mono:
            nxt: dict[int, dict[tuple, int]] = {}
            for key1, poly1 in partial.items():
                for key2, lin in grouped.get(var, ()):
                    key = key1 + key2
                    tgt = nxt.get(key)
                    if tgt is None:
                        tgt = nxt[key] = {}
                    for m1, c1 in poly1.items():
                        for I, c2 in lin.items():
                            m = tuple(sorted(m1 + (I,)))
                            tgt[m] = tgt.get(m, 0) + c1 * c2
            partial = nxt
        for key, poly in partial.items():
            tgt = result.setdefault(key, {})
            for m, c in poly.items():
                tgt[m] = tgt.get(m, 0) + c
    return result


def transform_polynomial(ctx: HilbertPolynomialContext, P: DeltaPolynomial) -> BigradedPolynomial:
    space, _ = _pgl_cache(ctx)
    raw = _transform(ctx, P)
    return BigradedPolynomial(space, {k: DeltaPolynomial(v) for k, v in raw.items()})


def blmr_full(ctx: HilbertPolynomialContext, P: DeltaPolynomial, dedup: bool = False) -> EquationSet:
    """Coefficients C_P of ``P(g.D)`` viewed as a polynomial in the g_{a,b}.

    One entry per g-monomial with a nonzero coefficient, ordered by packed
    g-exponent.
    """
    raw = _transform(ctx, P)
    return _equation_set("BLMR_FULL", ctx, (DeltaPolynomial(raw[k]) for k in sorted(raw)), dedup=dedup)


def blmr_full_many(ctx: HilbertPolynomialContext, polys: Sequence[DeltaPolynomial], workers: int = 1,
                   dedup: bool = False) -> EquationSet:
    """Union of C_P over several P; ``workers > 1`` uses a process pool."""
    if workers > 1 and len(polys) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(blmr_full, [ctx] * len(polys), polys))
    else:
        parts = [blmr_full(ctx, P) for P in polys]
    return _equation_set("BLMR_FULL", ctx, (q for part in parts for q in part), dedup=dedup)
