"""Chow ring of the Grassmannian Gr(2, m) of 2-planes in an m-dimensional space.

Classes are integer combinations of Schubert cycles ``sigma_{a,b}`` with
``m - 2 >= a >= b >= 0``; ``sigma_{a,b}`` has codimension ``a + b`` and the
point class is ``sigma_{m-2,m-2}``.  Products use Pieri's rule for the special
classes ``sigma_k = sigma_{k,0}`` together with
``sigma_{a,b} = sigma_{1,1}**b * sigma_{a-b}``.

Chern classes of the tautological rank-2 bundle ``U`` enter through
``c_1 -> sigma_1`` and ``c_2 -> sigma_{1,1}``.  The true sign is
``c_1(U) = -sigma_1``; every quantity computed from ``Sym^3 U`` below is even
in ``c_1``, so the choice does not matter (see :meth:`SymmetricPoly2.flip_e1`).
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from types import MappingProxyType
from typing import Iterator, Mapping

Partition2 = tuple[int, int]


def _check_partition(part: Partition2) -> Partition2:
    a, b = part
    if not (a >= b >= 0):
        raise ValueError(f"({a},{b}) is not a partition with at most two rows")
    return a, b


def partitions(m: int, weight: int | None = None) -> Iterator[Partition2]:
    """Schubert indices on Gr(2, m), optionally of a fixed codimension."""
    for a in range(m - 1):
        for b in range(a + 1):
            if weight is None or a + b == weight:
                yield a, b


class SchubertClass:
    """Immutable element of CH*(Gr(2, m)) in the Schubert basis."""

    __slots__ = ("m", "_terms")

    def __init__(self, m: int, terms: Mapping[Partition2, int] | None = None):
        if m < 3:
            raise ValueError(f"Gr(2, m) needs m >= 3, got {m}")
        clean: dict[Partition2, int] = {}
        for part, coeff in (terms or {}).items():
            a, b = _check_partition(part)
            # Cycles outside the 2 x (m-2) box vanish.
            if a > m - 2 or not coeff:
                continue
            clean[(a, b)] = clean.get((a, b), 0) + coeff
        self.m = m
        self._terms = MappingProxyType({k: v for k, v in clean.items() if v})

    @classmethod
    def sigma(cls, m: int, a: int, b: int = 0) -> SchubertClass:
        return cls(m, {(a, b): 1})

    @classmethod
    def one(cls, m: int) -> SchubertClass:
        return cls(m, {(0, 0): 1})

    @classmethod
    def zero(cls, m: int) -> SchubertClass:
        return cls(m)

    @property
    def terms(self) -> Mapping[Partition2, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def weights(self) -> set[int]:
        return {a + b for a, b in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def _check_same(self, other: SchubertClass) -> None:
        if not isinstance(other, SchubertClass):
            raise TypeError(f"expected SchubertClass, got {type(other).__name__}")
        if other.m != self.m:
            raise ValueError(f"ambient mismatch: Gr(2,{self.m}) vs Gr(2,{other.m})")

    def __add__(self, other: SchubertClass) -> SchubertClass:
        self._check_same(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return SchubertClass(self.m, out)

    def __neg__(self) -> SchubertClass:
        return SchubertClass(self.m, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: SchubertClass) -> SchubertClass:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SchubertClass(self.m, {k: other * v for k, v in self._terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> SchubertClass:
        out = SchubertClass.one(self.m)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchubertClass):
            return NotImplemented
        return self.m == other.m and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"0 [Gr(2,{self.m})]"
        body = " + ".join(
            f"{v}*s{a},{b}" for (a, b), v in sorted(self._terms.items())
        )
        return f"{body} [Gr(2,{self.m})]"


def pieri_sigma1(cls: SchubertClass) -> SchubertClass:
    """``sigma_1 * sigma_{a,b} = sigma_{a+1,b} + sigma_{a,b+1}``, truncated."""
    out: dict[Partition2, int] = defaultdict(int)
    for (a, b), v in cls.terms.items():
        out[(a + 1, b)] += v
        if b + 1 <= a:
            out[(a, b + 1)] += v
    return SchubertClass(cls.m, out)


def _pieri_special(k: int, cls: SchubertClass) -> SchubertClass:
    """``sigma_k * sigma_{a,b} = sum sigma_{c,d}`` over ``c >= a >= d >= b``, ``c+d = a+b+k``."""
    out: dict[Partition2, int] = defaultdict(int)
    for (a, b), v in cls.terms.items():
        total = a + b + k
        for d in range(b, a + 1):
            c = total - d
            if c >= a:
                out[(c, d)] += v
    return SchubertClass(cls.m, out)


def _times_sigma11(cls: SchubertClass, times: int = 1) -> SchubertClass:
    return SchubertClass(
        cls.m, {(a + times, b + times): v for (a, b), v in cls.terms.items()}
    )


def multiply(x: SchubertClass, y: SchubertClass) -> SchubertClass:
    x._check_same(y)
    out = SchubertClass.zero(x.m)
    for (a, b), v in x.terms.items():
        out = out + v * _times_sigma11(_pieri_special(a - b, y), b)
    return out


def integrate(cls: SchubertClass) -> int:
    """Degree of the zero-cycle part: the coefficient of the point class."""
    top = cls.m - 2
    return cls.terms.get((top, top), 0)


class SymmetricPoly2:
    """Integer polynomial in ``e1 = x1 + x2`` (weight 1) and ``e2 = x1 * x2`` (weight 2).

    ``coeffs`` maps ``(i, j)`` to the coefficient of ``e1**i * e2**j``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self._coeffs = MappingProxyType(
            {(int(i), int(j)): c for (i, j), c in (coeffs or {}).items() if c}
        )

    @property
    def coeffs(self) -> Mapping[tuple[int, int], int]:
        return self._coeffs

    def graded_part(self, w: int) -> SymmetricPoly2:
        return SymmetricPoly2({k: v for k, v in self._coeffs.items() if k[0] + 2 * k[1] == w})

    def flip_e1(self) -> SymmetricPoly2:
        """Substitute ``e1 -> -e1`` (i.e. pass from ``U`` to its dual)."""
        return SymmetricPoly2({(i, j): (-1) ** i * c for (i, j), c in self._coeffs.items()})

    def specialize_e1_zero(self) -> SymmetricPoly2:
        return SymmetricPoly2({k: v for k, v in self._coeffs.items() if k[0] == 0})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricPoly2):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        def mono(i, j):
            parts = [f"e1^{i}" if i > 1 else "e1" if i else "",
                     f"e2^{j}" if j > 1 else "e2" if j else ""]
            return "*".join(p for p in parts if p) or "1"
        return " + ".join(f"{c}*{mono(i, j)}" for (i, j), c in sorted(self._coeffs.items()))


# Bivariate polynomials in the Chern roots, {(deg_x1, deg_x2): coeff}.
_Poly = dict[tuple[int, int], int]


def _poly_mul(p: _Poly, q: _Poly) -> _Poly:
    out: _Poly = defaultdict(int)
    for (a1, a2), u in p.items():
        for (b1, b2), v in q.items():
            out[(a1 + b1, a2 + b2)] += u * v
    return {k: v for k, v in out.items() if v}


def _poly_pow(p: _Poly, e: int) -> _Poly:
    out: _Poly = {(0, 0): 1}
    for _ in range(e):
        out = _poly_mul(out, p)
    return out


_E1: _Poly = {(1, 0): 1, (0, 1): 1}
_E2: _Poly = {(1, 1): 1}


def to_elementary(poly: _Poly) -> SymmetricPoly2:
    """Rewrite a symmetric polynomial in ``x1, x2`` in terms of ``e1, e2``.

    Repeatedly cancels the lexicographically leading monomial
    ``x1**u * x2**v`` (``u >= v`` by symmetry) against ``e1**(u-v) * e2**v``.
    """
    rest = {k: v for k, v in poly.items() if v}
    out: dict[tuple[int, int], int] = {}
    while rest:
        u, v = max(rest)
        c = rest[(u, v)]
        if u < v:
            raise ValueError("polynomial is not symmetric")
        out[(u - v, v)] = c
        sub = _poly_mul(_poly_pow(_E1, u - v), _poly_pow(_E2, v))
        for k, w in sub.items():
            rest[k] = rest.get(k, 0) - c * w
            if not rest[k]:
                del rest[k]
    return SymmetricPoly2(out)


# Chern roots of Sym^3 of a rank-2 bundle with roots x1, x2.
SYM3_ROOTS: tuple[_Poly, ...] = (
    {(1, 0): 3},
    {(1, 0): 2, (0, 1): 1},
    {(1, 0): 1, (0, 1): 2},
    {(0, 1): 3},
)


def chern_sym3(k: int) -> SymmetricPoly2:
    """``c_k(Sym^3 U)``: the k-th elementary symmetric function of the four roots."""
    if not 1 <= k <= 4:
        raise ValueError(f"Sym^3 of a rank-2 bundle has rank 4; c_{k} is not defined here")
    total: _Poly = {}
    for subset in combinations(SYM3_ROOTS, k):
        term: _Poly = {(0, 0): 1}
        for root in subset:
            term = _poly_mul(term, root)
        for mono, c in term.items():
            total[mono] = total.get(mono, 0) + c
    return to_elementary(total)


def embed(poly: SymmetricPoly2, m: int) -> SchubertClass:
    """Image of a polynomial in ``c_1, c_2`` in CH*(Gr(2, m))."""
    s1 = SchubertClass.sigma(m, 1)
    s11 = SchubertClass.sigma(m, 1, 1)
    out = SchubertClass.zero(m)
    for (i, j), c in poly.coeffs.items():
        out = out + c * (s1**i * s11**j)
    return out


def fano_lines_degree(n: int, flip_sign: bool = False) -> int:
    """Degree of the Fano variety of lines on a cubic ``n``-fold cut by ``c_2(U)**(n-2)``.

    That is the number of lines on a cubic surface, 27, for every ``n >= 2``.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    c4 = chern_sym3(4)
    if flip_sign:
        c4 = c4.flip_e1()
    m = n + 2
    return integrate(embed(c4, m) * SchubertClass.sigma(m, 1, 1) ** (n - 2))
