"""Polynomials in the entries g_{a,b} of a generic (n+1)x(n+1) matrix.

Exponent vectors are packed into a single int (BITS bits per variable) so
monomial multiplication is integer addition.
"""

from __future__ import annotations

from typing import Mapping, Sequence

BITS = 8
MASK = (1 << BITS) - 1


class GSpace:
    """Index bookkeeping for the variables g_{a,b}, 1 <= a, b <= size."""

    def __init__(self, size: int):
        self.size = size
        self.nvars = size * size

    def var_index(self, a: int, b: int) -> int:
        return (a - 1) * self.size + (b - 1)

    def var_name(self, k: int) -> str:
        a, b = divmod(k, self.size)
        return f"g{a + 1}{b + 1}" if self.size < 10 else f"g{a + 1}_{b + 1}"

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        for k, e in enumerate(exps):
            if e > MASK:
                raise OverflowError("g-exponent too large to pack")
            key |= e << (BITS * k)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> (BITS * k)) & MASK for k in range(self.nvars))

    def monomial_str(self, key: int) -> str:
        parts = []
        for k, e in enumerate(self.unpack(key)):
            if e == 1:
                parts.append(self.var_name(k))
            elif e > 1:
                parts.append(f"{self.var_name(k)}^{e}")
        return "*".join(parts) if parts else "1"

    def var(self, a: int, b: int) -> "GPoly":
        return GPoly({1 << (BITS * self.var_index(a, b)): 1})


class GPoly:
    """Sparse integer polynomial in the g variables (packed keys)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def _wrap(terms):
        p = GPoly.__new__(GPoly)
        p.terms = terms
        return p

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GPoly({0: other})
        if not isinstance(other, GPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = GPoly({0: other})
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return GPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return GPoly._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return GPoly()
            return GPoly._wrap({k: c * other for k, c in self.terms.items()})
        out: dict[int, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return GPoly._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def evaluate(self, space: GSpace, g: Sequence[Sequence]):
        """Value at a concrete matrix ``g`` (rows indexed from 0)."""
        flat = [g[a][b] for a in range(space.size) for b in range(space.size)]
        total = 0
        for key, c in self.terms.items():
            v = c
            for k, e in enumerate(space.unpack(key)):
                if e:
                    v = v * flat[k] ** e
            total += v
        return total

    def to_text(self, space: GSpace) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: tuple(-e for e in space.unpack(kv[0])))
        out = ""
        for key, c in items:
            mono = space.monomial_str(key)
            mag = abs(c)
            body = mono if mag == 1 and mono != "1" else (str(mag) if mono == "1" else f"{mag}*{mono}")
            out += ("-" if c < 0 else "+") + body
        return out[1:] if out.startswith("+") else out

    @classmethod
    def parse(cls, space: GSpace, text: str) -> "GPoly":
        import re

        src = re.sub(r"\s+", "", text)
        total = GPoly()
        for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
            term = GPoly({0: -1 if sign == "-" else 1})
            for factor in body.split("*"):
                m = re.fullmatch(r"g(\d)(\d)(?:\^(\d+))?|(\d+)", factor)
                if not m:
                    raise ValueError(f"bad factor {factor!r}")
                if m.group(4):
                    term = term * int(m.group(4))
                    continue
                v = space.var(int(m.group(1)), int(m.group(2)))
                for _ in range(int(m.group(3) or 1)):
                    term = term * v
            total = total + term
        return total
