"""Hilbert polynomials, Gotzmann decomposition and the derived volume functions.

Polynomials in ``t`` are dense coefficient lists in the power basis,
lowest degree first: ``[1, 3]`` is ``3t + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import DegenerateDimension, NotAdmissible

# a safety net against pathological inputs; real decompositions are short
MAX_TERMS = 10_000


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_eval(coeffs: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def binomial_poly(shift: int, a: int) -> list[Fraction]:
    """Coefficients of the polynomial ``C(t + shift, a)`` in ``t``."""
    poly = [Fraction(1)]
    for k in range(a):
        # multiply by (t + shift - k)
        root = shift - k
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * root
            nxt[i + 1] += c
        poly = nxt
    den = factorial(a)
    return [c / den for c in poly]


def binom(x: int, a: int) -> int:
    """``C(x, a)`` as a polynomial in ``x``, so negative ``x`` is allowed."""
    if a < 0:
        return 0
    if x >= 0:
        return comb(x, a)
    num = 1
    for k in range(a):
        num *= x - k
    return num // factorial(a)


def parse_polynomial(text: str) -> list[Fraction]:
    """Parse ``"3t+1"``, ``"t^2/2 + 3t/2 + 1"`` or a comma list ``"1,3"``."""
    text = text.strip()
    if "," in text or re.fullmatch(r"-?\d+(/\d+)?", text):
        return [Fraction(tok.strip()) for tok in text.split(",")]
    src = text.replace(" ", "").replace("**", "^")
    if not src:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
        m = re.fullmatch(r"(\d+(?:/\d+)?)?\*?(t(?:\^(\d+))?)?(?:/(\d+))?", body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(4):
            c /= int(m.group(4))
        if m.group(2) is None:
            deg = 0
        else:
            deg = int(m.group(3)) if m.group(3) else 1
        if sign == "-":
            c = -c
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for deg, c in coeffs.items():
        out[deg] = c
    return out


def format_polynomial(coeffs: Sequence[Fraction]) -> str:
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[deg])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            var = "t" if deg == 1 else f"t^{deg}"
            if mag == 1:
                body = var
            elif mag.denominator == 1:
                body = f"{mag}{var}"
            else:
                body = f"{mag.numerator}{var}/{mag.denominator}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class HilbertPolynomialContext:
    """An admissible Hilbert polynomial in P^n together with its Gotzmann data.

    ``gotzmann_coeffs`` holds ``a_0 >= ... >= a_s`` with
    ``p(t) = sum_i C(t + a_i - i, a_i)``; the Gotzmann number is ``r = s + 1``.
    """

    n: int
    p_coeffs: tuple[Fraction, ...]
    gotzmann_coeffs: tuple[int, ...]
    r: int
    d: int

    def p(self, t: int) -> int:
        return int(poly_eval(self.p_coeffs, t))

    def dim_S(self, t: int) -> int:
        return comb(self.n + t, self.n)

    def q(self, t: int) -> int:
        return q_of(self, t)

    def qprime(self, t: int) -> int:
        return qprime_of(self, t)

    @property
    def N(self) -> int:
        """Dimension of S_r, the ambient space of the Grassmannian."""
        return self.dim_S(self.r)

    @property
    def p_r(self) -> int:
        return self.p(self.r)

    @property
    def q_r(self) -> int:
        return self.q(self.r)

    def describe(self) -> dict:
        r = self.r
        out = {
            "p": format_polynomial(self.p_coeffs),
            "n": self.n,
            "gotzmann_coeffs": list(self.gotzmann_coeffs),
            "r": r,
            "d": self.d,
            "p(r)": self.p(r),
            "q(r)": self.q(r),
            "q(r+1)": self.q(r + 1),
        }
        if self.d < self.n:
            out["q'(r+1)"] = self.qprime(r + 1)
        return out


def gotzmann_decompose(p: Sequence, n: int) -> HilbertPolynomialContext:
    """Write ``p`` as ``sum_i C(t + a_i - i, a_i)`` with non-increasing ``a_i``.

    Raises NotAdmissible when ``p`` is not integer valued, not eventually
    below ``C(n + t, n)``, or the greedy peeling breaks monotonicity.
    """
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = _trim(Fraction(c) for c in p)
    if not coeffs:
        raise NotAdmissible("the zero polynomial is not a Hilbert polynomial of a subscheme")
    deg = len(coeffs) - 1
    if any(poly_eval(coeffs, t).denominator != 1 for t in range(deg + 1)):
        raise NotAdmissible("p(t) is not integer valued")
    if deg >= n:
        raise NotAdmissible(f"deg p = {deg} must be smaller than n = {n}")

    rem = list(coeffs)
    a_list: list[int] = []
    while rem:
        if len(a_list) >= MAX_TERMS:
            raise NotAdmissible("decomposition does not terminate")
        a = len(rem) - 1
        if rem[-1] < 0:
            raise NotAdmissible("negative leading coefficient while peeling")
        if a_list and a > a_list[-1]:
            raise NotAdmissible("Gotzmann coefficients would increase")
        i = len(a_list)
        term = binomial_poly(a - i, a)
        rem = _trim(x - (term[k] if k < len(term) else 0) for k, x in enumerate(rem))
        a_list.append(a)
    return HilbertPolynomialContext(
        n=n,
        p_coeffs=tuple(coeffs),
        gotzmann_coeffs=tuple(a_list),
        r=len(a_list),
        d=a_list[0],
    )


def q_of(ctx: HilbertPolynomialContext, t: int) -> int:
    """Volume function ``C(n + t, n) - p(t)``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return comb(ctx.n + t, ctx.n) - ctx.p(t)


def qprime_of(ctx: HilbertPolynomialContext, t: int) -> int:
    """``q(t) - dim k[x_{d+1}, ..., x_n]_t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if ctx.d >= ctx.n:
        raise DegenerateDimension(f"d = {ctx.d} >= n = {ctx.n}")
    k = ctx.n - ctx.d - 1
    return q_of(ctx, t) - comb(k + t, k)
