"""Sparse exterior algebra over a commutative coefficient ring.

Basis elements e_{i_1} ^ ... ^ e_{i_k} of the exterior power of an
N-dimensional space are keyed by strictly increasing 1-based index tuples.
Coefficients can be anything supporting ``+``, ``-``, ``*`` and truth
testing for zero: ints, Fractions, and :class:`hilbeq.plucker.DeltaPolynomial`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BadMultiIndex, DimensionMismatch
from .linalg import det

MultiIndex = tuple[int, ...]


def check_multi_index(idx: Sequence[int], N: int | None = None) -> MultiIndex:
    idx = tuple(idx)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise BadMultiIndex(f"{idx} is not strictly increasing")
    if idx and (idx[0] < 1 or (N is not None and idx[-1] > N)):
        raise BadMultiIndex(f"{idx} out of range 1..{N}")
    return idx


def permutation_sign(seq: Sequence[int]) -> int:
    """Signature of the permutation sorting ``seq``; 0 on a repeated entry."""
    if len(set(seq)) != len(seq):
        return 0
    inv = 0
    for i in range(len(seq)):
        si = seq[i]
        for j in range(i + 1, len(seq)):
            if seq[j] < si:
                inv += 1
    return -1 if inv & 1 else 1


def sign_of_concat(K: Sequence[int], H: Sequence[int]) -> int:
    """Sign of the permutation ordering the concatenation K|H."""
    return permutation_sign(tuple(K) + tuple(H))


def _merge_sign(K: MultiIndex, H: MultiIndex) -> int:
    # K and H strictly increasing; 0 if they meet
    inv = 0
    j = 0
    lh = len(H)
    for k in K:
        while j < lh and H[j] < k:
            j += 1
        if j < lh and H[j] == k:
            return 0
        inv += j
    return -1 if inv & 1 else 1


def union(K: Sequence[int], H: Sequence[int]) -> MultiIndex:
    return tuple(sorted(set(K) | set(H)))


def complement(K: Sequence[int], N: int) -> MultiIndex:
    ks = set(K)
    return tuple(i for i in range(1, N + 1) if i not in ks)


class ExteriorElement:
    """An element of the ``step``-th exterior power of a ``dim``-dimensional space."""

    __slots__ = ("step", "dim", "terms")

    def __init__(self, step: int, dim: int, terms: Mapping[MultiIndex, object] | None = None):
        self.step = step
        self.dim = dim
        self.terms: dict[MultiIndex, object] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != step or (key and key[-1] > dim):
                raise BadMultiIndex(f"key {key} does not fit step {step}, dim {dim}")
            if c:
                self.terms[key] = c

    @classmethod
    def basis_element(cls, idx: Sequence[int], dim: int, coeff=1) -> "ExteriorElement":
        """``coeff * e_{idx}`` with ``idx`` in any order (sign adjusted)."""
        sign = permutation_sign(idx)
        key = tuple(sorted(idx))
        return cls(len(key), dim, {key: coeff * sign} if sign else {})

    @classmethod
    def from_vector(cls, vec: Sequence) -> "ExteriorElement":
        return cls(1, len(vec), {(i,): c for i, c in enumerate(vec, start=1) if c})

    def __repr__(self):
        body = " + ".join(f"({c})*e{list(k)}" for k, c in sorted(self.terms.items()))
        return f"ExteriorElement(step={self.step}, dim={self.dim}: {body or '0'})"

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.dim == other.dim
        return (self.step, self.dim, self.terms) == (other.step, other.dim, other.terms)

    def _check_same(self, other: "ExteriorElement"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_same(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.step != other.step:
            raise DimensionMismatch("cannot add elements of different steps")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ExteriorElement(self.step, self.dim, out)

    def __neg__(self):
        return ExteriorElement(self.step, self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "ExteriorElement":
        return ExteriorElement(self.step, self.dim, {k: s * c for k, c in self.terms.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def map_coeffs(self, f: Callable) -> "ExteriorElement":
        return ExteriorElement(self.step, self.dim, {k: f(c) for k, c in self.terms.items()})

    def relabel(self, index_map: Callable[[int], int], dim: int) -> "ExteriorElement":
        """Send e_h to e_{index_map(h)} in a ``dim``-dimensional space."""
        out: dict[MultiIndex, object] = {}
        for key, c in self.terms.items():
            img = tuple(index_map(h) for h in key)
            sign = permutation_sign(img)
            if not sign:
                continue
            k2 = tuple(sorted(img))
            v = c if sign > 0 else -c
            if k2 in out:
                v = out[k2] + v
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
        return ExteriorElement(self.step, dim, out)

    def coefficient(self, key: Sequence[int]):
        return self.terms.get(tuple(key), 0)

    def top_coefficient(self):
        """Coefficient of e_1 ^ ... ^ e_N (only meaningful for step = N)."""
        return self.terms.get(tuple(range(1, self.dim + 1)), 0)


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    """Exterior product ``a ^ b``."""
    a._check_same(b)
    out: dict[MultiIndex, object] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign = _merge_sign(ka, kb)
            if not sign:
                continue
            key = tuple(sorted(ka + kb))
            prod = ca * cb
            if sign < 0:
                prod = -prod
            if key in out:
                prod = out[key] + prod
            out[key] = prod
    return ExteriorElement(a.step + b.step, a.dim, {k: c for k, c in out.items() if c})


def wedge_all(elements: Iterable[ExteriorElement], dim: int | None = None) -> ExteriorElement:
    elements = list(elements)
    if not elements:
        if dim is None:
            raise ValueError("empty wedge needs an explicit dimension")
        return ExteriorElement(0, dim, {(): 1})
    acc = elements[0]
    for e in elements[1:]:
        acc = wedge(acc, e)
    return acc


def wedge_vectors(vectors: Sequence[Sequence], dim: int | None = None) -> ExteriorElement:
    if vectors:
        dim = len(vectors[0])
    return wedge_all([ExteriorElement.from_vector(v) for v in vectors], dim=dim)


def _bracket_scale(basis):
    if basis is None:
        return 1
    return Fraction(1) / Fraction(det(basis))


def meet(T: ExteriorElement, U: ExteriorElement, basis=None, expansion: int = 1) -> ExteriorElement:
    """Meet ``T * U`` for the bracket given by ``basis`` (default: det in e_1..e_N).

    ``expansion=1`` splits T, ``expansion=2`` splits U; both give the same
    element.  The bracket is extended linearly from basis extensors.
    """
    T._check_same(U)
    N, p, q = T.dim, T.step, U.step
    if p + q < N:
        raise DimensionMismatch(f"steps {p} + {q} < {N}")
    s = _bracket_scale(basis)
    acc: dict[MultiIndex, object] = {}
    if expansion == 1:
        for K, cT in T.terms.items():
            for H in combinations(K, N - q):
                rest = tuple(i for i in K if i not in H)
                sgn = sign_of_concat(H, rest)
                for L, cU in U.terms.items():
                    br = _merge_sign(H, L)
                    if br:
                        v = cT * cU * (sgn * br)
                        acc[rest] = acc[rest] + v if rest in acc else v
    elif expansion == 2:
        for L, cU in U.terms.items():
            for J in combinations(L, N - p):
                rest = tuple(i for i in L if i not in J)
                sgn = sign_of_concat(rest, J)
                for K, cT in T.terms.items():
                    br = _merge_sign(K, J)
                    if br:
                        v = cT * cU * (sgn * br)
                        acc[rest] = acc[rest] + v if rest in acc else v
    else:
        raise ValueError("expansion must be 1 or 2")
    out = ExteriorElement(p + q - N, N, acc)
    return out.scale(s) if s != 1 else out


def meet_extensors(a_vectors, b_vectors, basis=None, expansion: int = 1) -> ExteriorElement:
    """Meet of ``a_1^...^a_p`` and ``b_1^...^b_q`` computed from the vectors.

    Expansion 1 sums ``eps(H|K) [a_H, U] a_K`` over splittings of the a's,
    expansion 2 sums ``eps(I|J) [T, b_J] b_I`` over splittings of the b's.
    """
    N = len(a_vectors[0]) if a_vectors else len(b_vectors[0])
    p, q = len(a_vectors), len(b_vectors)
    if p + q < N:
        raise DimensionMismatch(f"steps {p} + {q} < {N}")
    s = _bracket_scale(basis)
    if expansion == 1:
        fixed, moving, split = wedge_vectors(b_vectors, N), a_vectors, N - q
    elif expansion == 2:
        fixed, moving, split = wedge_vectors(a_vectors, N), b_vectors, N - p
    else:
        raise ValueError("expansion must be 1 or 2")
    total = ExteriorElement(p + q - N, N)
    idx = range(len(moving))
    for part in combinations(idx, split):
        rest = tuple(i for i in idx if i not in part)
        vecs_part = [moving[i] for i in part]
        if expansion == 1:
            sgn = sign_of_concat(part, rest)
            br = wedge(wedge_vectors(vecs_part, N), fixed).top_coefficient()
        else:
            sgn = sign_of_concat(rest, part)
            br = wedge(fixed, wedge_vectors(vecs_part, N)).top_coefficient()
        if not br:
            continue
        rest_vecs = [moving[i] for i in rest]
        body = wedge_vectors(rest_vecs, N)
        total = total + body.scale(br * sgn)
    return total.scale(s) if s != 1 else total
