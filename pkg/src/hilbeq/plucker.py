"""Plücker variables, the generator families delta/theta and Plücker relations.

A point of the Grassmannian of q-dimensional subspaces F of an
N-dimensional space E carries two coordinate systems: the quotient
coordinates Delta_I (|I| = p = N - q) and the minors Theta_K (|K| = q).
The families delta^m_J and theta^m_J span the m-th exterior power of F and
have coefficients that are single signed Plücker variables.
"""

from __future__ import annotations

import re
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import BadMultiIndex, ParseError
from .exterior import (
    ExteriorElement,
    MultiIndex,
    check_multi_index,
    complement,
    permutation_sign,
    sign_of_concat,
)
from .hilbpoly import HilbertPolynomialContext
from .monom import multiply_index

DeltaMonomial = tuple[MultiIndex, ...]


class DeltaPolynomial:
    """Sparse integer polynomial in the Plücker variables D[i1,...,ip].

    Monomials are sorted tuples of index tuples, repeated for powers, so
    ``D[2,6]^2 * D[4,6]`` is keyed ``((2, 6), (2, 6), (4, 6))``.
    """

    SYMBOL = "D"
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[DeltaMonomial, int] | None = None):
        self.terms: dict[DeltaMonomial, int] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[tuple(k)] = c

    @classmethod
    def var(cls, idx: Sequence[int], coeff: int = 1):
        """``coeff * D_idx``; an unordered ``idx`` picks up the sorting sign."""
        sign = permutation_sign(idx)
        if not sign or not coeff:
            return cls()
        return cls({(tuple(sorted(idx)),): coeff * sign})

    @classmethod
    def constant(cls, c: int):
        return cls({(): c}) if c else cls()

    def _new(self, terms):
        p = type(self).__new__(type(self))
        p.terms = terms
        return p

    def _coerce(self, other):
        if isinstance(other, DeltaPolynomial):
            return other
        if isinstance(other, int):
            return self._new({(): other} if other else {})
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self._new({})
            if other == 1:
                return self
            return self._new({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, DeltaPolynomial):
            return NotImplemented
        out: dict[DeltaMonomial, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(sorted(k1 + k2))
                out[k] = out.get(k, 0) + c1 * c2
        return self._new({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self._new({(): 1})
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, DeltaPolynomial) else other
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- inspection -------------------------------------------------------

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    @property
    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def variables(self) -> set[MultiIndex]:
        return {v for k in self.terms for v in k}

    def content(self) -> int:
        return reduce(gcd, self.terms.values(), 0)

    def sorted_terms(self) -> list[tuple[DeltaMonomial, int]]:
        return sorted(self.terms.items())

    def normalize(self) -> "DeltaPolynomial":
        """Divide out the content and make the first canonical term positive."""
        if not self.terms:
            return self
        items = self.sorted_terms()
        g = self.content()
        if items[0][1] < 0:
            g = -g
        return self._new({k: c // g for k, c in items})

    def evaluate(self, coords: Mapping[MultiIndex, object]):
        """Substitute values for the variables; missing variables count as 0."""
        total = 0
        for mono, c in self.terms.items():
            v = c
            for var in mono:
                x = coords.get(var, 0)
                if not x:
                    v = 0
                    break
                v = v * x
            if v:
                total = total + v
        return total

    def substitute(self, images: Mapping[MultiIndex, object], one=1):
        """Replace each variable by ``images[var]`` (ring elements) and expand."""
        total = None
        for mono, c in self.sorted_terms():
            v = one
            for var in mono:
                v = v * images[var]
            v = v * c
            total = v if total is None else total + v
        return total if total is not None else 0 * one

    # -- serialization ----------------------------------------------------

    def _var_text(self, var: MultiIndex) -> str:
        return f"{self.SYMBOL}[{','.join(map(str, var))}]"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            for v in sorted(set(mono)):
                e = mono.count(v)
                factors.append(self._var_text(v) + (f"^{e}" if e > 1 else ""))
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            out.append(sign + body)
        text = "".join(out)
        return text[1:] if text.startswith("+") else text

    __str__ = to_text

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(c), "vars": [list(v) for v in mono]}
            for mono, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "DeltaPolynomial":
        p = cls()
        for item in data:
            c = int(item["coeff"])
            sign = 1
            mono = []
            for v in item["vars"]:
                s = permutation_sign(v)
                if not s:
                    sign = 0
                    break
                sign *= s
                mono.append(tuple(sorted(v)))
            if sign:
                p = p + cls({tuple(sorted(mono)): sign * c})
        return p

    @classmethod
    def parse(cls, text: str) -> "DeltaPolynomial":
        """Parse the canonical text grammar, e.g. ``-D[2,6]*D[4,6]+3*D[1,2]^2``."""
        src = re.sub(r"\s+", "", text)
        if src in ("", "0"):
            return cls()
        sym = re.escape(cls.SYMBOL)
        factor_re = re.compile(rf"{sym}\[(\d+(?:,\d+)*)\](?:\^(\d+))?|(\d+)")
        total = cls()
        for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
            term = cls.constant(-1 if sign == "-" else 1)
            for part in body.split("*"):
                m = factor_re.fullmatch(part)
                if not m:
                    raise ParseError(f"bad factor {part!r} in {text!r}")
                if m.group(3) is not None:
                    term = term * int(m.group(3))
                else:
                    idx = tuple(int(x) for x in m.group(1).split(","))
                    e = int(m.group(2)) if m.group(2) else 1
                    term = term * (cls.var(idx) ** e)
            total = total + term
        return total


class ThetaPolynomial(DeltaPolynomial):
    """Same arithmetic, but the variables are the minor coordinates Theta_K."""

    SYMBOL = "T"
    __slots__ = ()


def normalize_set(polys: Iterable[DeltaPolynomial]) -> list[DeltaPolynomial]:
    """Normalize, drop zeros and duplicates, sort canonically by text form."""
    seen: dict[str, DeltaPolynomial] = {}
    for p in polys:
        if not p:
            continue
        q = p.normalize()
        seen.setdefault(q.to_text(), q)
    return [seen[k] for k in sorted(seen, key=lambda t: (seen[t].degree, seen[t].sorted_terms()))]


# -- generator families ---------------------------------------------------


def grassmann_shape(ctx) -> tuple[int, int]:
    """(p, N) from a HilbertPolynomialContext or a plain ``(p, N)`` pair."""
    if isinstance(ctx, HilbertPolynomialContext):
        return ctx.p_r, ctx.N
    p, N = ctx
    return int(p), int(N)


def delta_gen(ctx, m: int, J: Sequence[int]) -> ExteriorElement:
    """``delta^m_J = sum eps(H|I) D_I e_H`` over splittings J = H u I, |I| = p."""
    p, N = grassmann_shape(ctx)
    J = check_multi_index(J, N)
    if not 1 <= m <= N - p:
        raise BadMultiIndex(f"step m = {m} outside 1..{N - p}")
    if len(J) != p + m:
        raise BadMultiIndex(f"|J| = {len(J)} but p + m = {p + m}")
    terms = {}
    for I in combinations(J, p):
        H = tuple(j for j in J if j not in I)
        terms[H] = DeltaPolynomial.var(I, sign_of_concat(H, I))
    return ExteriorElement(m, N, terms)


def theta_gen(ctx, m: int, J: Sequence[int]) -> ExteriorElement:
    """``theta^m_J = sum_H eps(J|H) T_{J u H} e_H`` over H disjoint from J, |H| = m."""
    p, N = grassmann_shape(ctx)
    q = N - p
    J = check_multi_index(J, N)
    if not 1 <= m <= q:
        raise BadMultiIndex(f"step m = {m} outside 1..{q}")
    if len(J) != q - m:
        raise BadMultiIndex(f"|J| = {len(J)} but q - m = {q - m}")
    rest = complement(J, N)
    terms = {}
    for H in combinations(rest, m):
        K = tuple(sorted(J + H))
        terms[H] = ThetaPolynomial.var(K, sign_of_concat(J, H))
    return ExteriorElement(m, N, terms)


def delta_family(ctx, m: int) -> list[tuple[MultiIndex, ExteriorElement]]:
    """All ``(J, delta^m_J)``: the family B_m."""
    p, N = grassmann_shape(ctx)
    return [(J, delta_gen(ctx, m, J)) for J in combinations(range(1, N + 1), p + m)]


def theta_family(ctx, m: int) -> list[tuple[MultiIndex, ExteriorElement]]:
    p, N = grassmann_shape(ctx)
    return [(J, theta_gen(ctx, m, J)) for J in combinations(range(1, N + 1), N - p - m)]


def delta_to_theta(delta: Mapping[MultiIndex, object], N: int) -> dict[MultiIndex, object]:
    """``Theta_K = -eps(K|I) Delta_I`` with I the complement of K."""
    out = {}
    for I, v in delta.items():
        K = complement(I, N)
        out[K] = -sign_of_concat(K, I) * v
    return out


def theta_to_delta(theta: Mapping[MultiIndex, object], N: int) -> dict[MultiIndex, object]:
    """Inverse of :func:`delta_to_theta`."""
    out = {}
    for K, v in theta.items():
        I = complement(K, N)
        out[I] = -sign_of_concat(K, I) * v
    return out


def delta_theta_convert(coords: Mapping[MultiIndex, object], N: int, to: str = "theta"):
    if to == "theta":
        return delta_to_theta(coords, N)
    if to == "delta":
        return theta_to_delta(coords, N)
    raise ValueError("to must be 'theta' or 'delta'")


def lift(elem: ExteriorElement, ctx: HilbertPolynomialContext, i: int) -> ExteriorElement:
    """Multiply every basis factor x^alpha(h) by x_i, landing in degree r+1."""
    n, r = ctx.n, ctx.r
    return elem.relabel(lambda h: multiply_index(n, r, i, h), ctx.dim_S(r + 1))


def xi_delta(ctx: HilbertPolynomialContext, i: int, m: int, J: Sequence[int]) -> ExteriorElement:
    """``x_i delta^m_J`` over the wedge basis of degree r+1."""
    if not 0 <= i <= ctx.n:
        raise BadMultiIndex(f"variable index {i} outside 0..{ctx.n}")
    return lift(delta_gen(ctx, m, J), ctx, i)


def plucker_relations(ctx) -> list[DeltaPolynomial]:
    """Grassmann-Plücker quadrics in the Delta system.

    For every (p-1)-set A and (p+1)-set B:
    ``sum_l (-1)^l D_{A|b_l} D_{B - b_l} = 0``.
    """
    p, N = grassmann_shape(ctx)
    rng = range(1, N + 1)
    rels = []
    for A in combinations(rng, p - 1):
        for B in combinations(rng, p + 1):
            rel = DeltaPolynomial()
            for l, b in enumerate(B):
                if b in A:
                    continue
                left = DeltaPolynomial.var(A + (b,))
                right = DeltaPolynomial.var(B[:l] + B[l + 1 :])
                term = left * right
                rel = rel + (term if l % 2 == 0 else -term)
            if rel:
                rels.append(rel)
    return normalize_set(rels)
