import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from sympy.polys.polyfuncs import symmetrize

from torsion_order.lr_oracle import grassmannian_product, lr_coefficient
from torsion_order.schubert import (
    SchubertClass,
    SymmetricPoly2,
    chern_sym3,
    embed,
    fano_lines_degree,
    integrate,
    multiply,
    partitions,
    pieri_sigma1,
    to_elementary,
)

s = SchubertClass.sigma


def sympy_chern_sym3(k):
    """c_k(Sym^3) by expanding prod(1 + root * t) and symmetrizing with sympy."""
    x1, x2, t = sp.symbols("x1 x2 t")
    roots = [3 * x1, 2 * x1 + x2, x1 + 2 * x2, 3 * x2]
    ck = sp.expand(sp.prod([1 + r * t for r in roots])).coeff(t, k)
    sym, rem, defs = symmetrize(ck, formal=True)
    assert rem == 0
    s1, s2 = [d[0] for d in defs]
    poly = sp.Poly(sym, s1, s2)
    return SymmetricPoly2({mono: int(c) for mono, c in poly.terms()})


def test_pieri_examples():
    assert pieri_sigma1(s(4, 1)) == s(4, 2) + s(4, 1, 1)
    assert pieri_sigma1(s(4, 2, 2)).is_zero()
    assert pieri_sigma1(s(4, 1, 1)) == s(4, 2, 1)


def test_out_of_box_terms_are_dropped():
    assert SchubertClass(4, {(3, 0): 5}).is_zero()
    assert SchubertClass(4, {(1, 0): 0}).terms == {}
    with pytest.raises(ValueError):
        s(4, 1, 2)


def test_multiply_examples():
    assert s(4, 1, 1) * s(4, 1, 1) == s(4, 2, 2)
    assert s(4, 1) ** 2 * s(4, 1, 1) == s(4, 2, 2)
    # Oracle: the only candidate (2,2) has no LR tableau of shape (2,2)/(2) and content (1,1).
    assert grassmannian_product(4, (2, 0), (1, 1)) == {}
    assert (s(4, 2) * s(4, 1, 1)).is_zero()


def test_multiply_ambient_mismatch():
    with pytest.raises(ValueError):
        multiply(s(4, 1), s(5, 1))


def test_identity():
    x = s(6, 2, 1) + 3 * s(6, 3)
    assert SchubertClass.one(6) * x == x


@pytest.mark.parametrize("m", range(3, 9))
def test_multiply_matches_lr_oracle(m):
    basis = list(partitions(m))
    for lam in basis:
        for mu in basis:
            assert dict((s(m, *lam) * s(m, *mu)).terms) == grassmannian_product(m, lam, mu)


def test_lr_oracle_known_values():
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((1,), (1,), (1, 1)) == 1
    assert lr_coefficient((2,), (1, 1), (3, 1)) == 1
    assert lr_coefficient((2,), (1, 1), (2, 2)) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_integrate_top_powers(n):
    m = n + 2
    assert integrate(s(m, 1, 1) ** n) == 1
    assert integrate(s(m, 1) ** 2 * s(m, 1, 1) ** (n - 1)) == 1


def test_integrate_non_top_is_zero():
    assert integrate(s(4, 1)) == 0


@pytest.mark.parametrize("m", range(3, 9))
def test_poincare_duality(m):
    top = m - 2
    for lam in partitions(m):
        for mu in partitions(m):
            if sum(lam) + sum(mu) != 2 * top:
                continue
            expected = 1 if mu == (top - lam[1], top - lam[0]) else 0
            assert integrate(s(m, *lam) * s(m, *mu)) == expected


_basis6 = list(partitions(6))
sparse_class = st.dictionaries(st.sampled_from(_basis6), st.integers(-5, 5), max_size=4).map(
    lambda d: SchubertClass(6, d)
)


@settings(max_examples=60, deadline=None)
@given(sparse_class, sparse_class, sparse_class)
def test_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_chern_sym3_matches_sympy(k):
    assert chern_sym3(k) == sympy_chern_sym3(k)


def test_chern_sym3_values():
    assert chern_sym3(4) == SymmetricPoly2({(0, 2): 9, (2, 1): 18})
    assert chern_sym3(1) == SymmetricPoly2({(1, 0): 6})
    assert chern_sym3(4).specialize_e1_zero() == SymmetricPoly2({(0, 2): 9})


def test_chern_sym3_range():
    for k in (0, 5):
        with pytest.raises(ValueError):
            chern_sym3(k)


def test_middle_roots_identity():
    # (2 x1 + x2)(x1 + 2 x2) = 2 e1^2 + e2
    product = {(2, 0): 2, (1, 1): 5, (0, 2): 2}
    assert to_elementary(product) == SymmetricPoly2({(2, 0): 2, (0, 1): 1})


def test_to_elementary_rejects_asymmetric():
    with pytest.raises(ValueError):
        to_elementary({(0, 1): 1})


def test_embed():
    assert embed(SymmetricPoly2({(0, 1): 1}), 4) == s(4, 1, 1)
    assert integrate(embed(chern_sym3(4), 4)) == 27
    assert embed(SymmetricPoly2(), 4).is_zero()


@pytest.mark.parametrize("n", [2, 3, 10])
def test_fano_lines_degree(n):
    assert fano_lines_degree(n) == 27


def test_c4_even_in_c1():
    c4 = chern_sym3(4)
    assert c4.flip_e1() == c4
    for n in range(2, 9):
        assert fano_lines_degree(n, flip_sign=True) == fano_lines_degree(n) == 27


def test_fano_lines_needs_surface_or_more():
    with pytest.raises(ValueError):
        fano_lines_degree(1)
