"""Monomial bases of S_t = k[x_0..x_n]_t, Borel moves and lexsegments.

A monomial is a tuple of n+1 exponents, position i holding the exponent of
x_i.  Variables are ordered x_n > ... > x_0.  Basis indices are 1-based and
follow DegRevLex, largest monomial first.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .hilbpoly import HilbertPolynomialContext

Monomial = tuple[int, ...]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def degrevlex_key(mono: Monomial) -> Monomial:
    """Sort key, ascending = DegRevLex descending within a fixed degree.

    With x_n > ... > x_0 the reverse-lex tie break looks at x_0 first and
    prefers the smaller exponent, so the raw exponent tuple already sorts
    correctly.
    """
    return mono


def lex_key(mono: Monomial) -> Monomial:
    """Sort key, ascending = pure lex descending with x_n > ... > x_0."""
    return tuple(-e for e in reversed(mono))


class MonomialBasis:
    """The DegRevLex-ordered monomial basis of S_t in n+1 variables."""

    def __init__(self, n: int, t: int):
        if n < 1 or t < 0:
            raise ValueError("need n >= 1 and t >= 0")
        self.n = n
        self.degree = t
        self.monomials: tuple[Monomial, ...] = tuple(
            sorted(_compositions(t, n + 1), key=degrevlex_key)
        )
        self._index = {m: k for k, m in enumerate(self.monomials, start=1)}

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __repr__(self):
        return f"MonomialBasis(n={self.n}, t={self.degree})"

    def index_of(self, mono: Monomial) -> int:
        return self._index[tuple(mono)]

    def monomial_of(self, k: int) -> Monomial:
        if not 1 <= k <= len(self.monomials):
            raise IndexError(k)
        return self.monomials[k - 1]

    def labels(self, names: Sequence[str] | None = None) -> list[str]:
        return [monomial_str(m, names) for m in self.monomials]


@lru_cache(maxsize=None)
def basis(n: int, t: int) -> MonomialBasis:
    return MonomialBasis(n, t)


@lru_cache(maxsize=None)
def _multiply_table(n: int, t: int) -> tuple[tuple[int, ...], ...]:
    src, dst = basis(n, t), basis(n, t + 1)
    table = []
    for i in range(n + 1):
        row = []
        for m in src:
            m2 = list(m)
            m2[i] += 1
            row.append(dst.index_of(tuple(m2)))
        table.append(tuple(row))
    return tuple(table)


def multiply_index(n: int, t: int, i: int, k: int) -> int:
    """Index in basis(n, t+1) of x_i times the k-th monomial of basis(n, t)."""
    return _multiply_table(n, t)[i][k - 1]


def default_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(n + 1)]


def monomial_str(mono: Monomial, names: Sequence[str] | None = None) -> str:
    """Render a monomial, largest variable first: ``x2^2*x0``."""
    names = names or default_names(len(mono) - 1)
    parts = []
    for i in range(len(mono) - 1, -1, -1):
        e = mono[i]
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, n: int, names: Sequence[str] | None = None) -> Monomial:
    names = list(names or default_names(n))
    exps = [0] * (n + 1)
    text = text.strip().replace(" ", "")
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        var, _, power = factor.partition("^")
        if var not in names:
            raise ValueError(f"unknown variable {var!r}")
        exps[names.index(var)] += int(power) if power else 1
    return tuple(exps)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def in_ideal(mono: Monomial, generators: Iterable[Monomial]) -> bool:
    return any(divides(g, mono) for g in generators)


def elementary_moves(mono: Monomial):
    """All (x_j / x_i) * mono with j > i and x_i dividing mono."""
    n = len(mono) - 1
    for i in range(n + 1):
        if mono[i] == 0:
            continue
        for j in range(i + 1, n + 1):
            m2 = list(mono)
            m2[i] -= 1
            m2[j] += 1
            yield tuple(m2)


def is_borel(generators: Iterable[Monomial]) -> bool:
    """True if the monomial ideal generated by ``generators`` is Borel-fixed.

    It suffices to test the elementary moves on the generators themselves.
    """
    gens = [tuple(g) for g in generators]
    return all(in_ideal(m2, gens) for g in gens for m2 in elementary_moves(g))


def lexsegment_degree(ctx: HilbertPolynomialContext) -> list[Monomial]:
    """The q(r) lex-largest monomials of degree r, in DegRevLex basis order."""
    mons = sorted(basis(ctx.n, ctx.r), key=lex_key)[: ctx.q(ctx.r)]
    return sorted(mons, key=degrevlex_key)


def small_ring_indices(n: int, t: int, d: int) -> list[int]:
    """Basis indices of the monomials of k[x_{d+1}, ..., x_n]_t."""
    b = basis(n, t)
    return [k for k, m in enumerate(b, start=1) if all(e == 0 for e in m[: d + 1])]


def dim_small_ring(n: int, t: int, d: int) -> int:
    k = n - d - 1
    return comb(k + t, k)


def induced_action(n: int, t: int, g, zero=0, one=1) -> list[list]:
    """Matrix of the substitution x <- g x on S_t in the DegRevLex basis.

    Row h holds the coordinates of g.x^alpha(h).  Row/column a of ``g``
    (0-based) belongs to the variable x_{n-a}, so for n = 2 the variables
    (x, y, z) = (x_2, x_1, x_0) match rows 1, 2, 3 of g.  Entries of ``g``
    may come from any commutative ring.
    """
    b = basis(n, t)
    images = []
    for v in range(n + 1):
        a = n - v
        form = {}
        for j in range(n + 1):
            e = [0] * (n + 1)
            e[n - j] = 1
            form[tuple(e)] = g[a][j]
        images.append(form)
    rows = []
    for mono in b:
        poly = {tuple([0] * (n + 1)): one}
        for v in range(n + 1):
            for _ in range(mono[v]):
                nxt: dict = {}
                for ex, c in poly.items():
                    for ex2, c2 in images[v].items():
                        k = tuple(x + y for x, y in zip(ex, ex2))
                        term = c * c2
                        nxt[k] = nxt[k] + term if k in nxt else term
                poly = nxt
        rows.append([poly.get(target, zero) for target in b])
    return rows
