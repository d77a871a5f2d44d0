import pytest

from kgv.intmath import factorize
from kgv.polyfield import (
    FiniteField,
    MonicPoly,
    enumerate_irreducibles,
    is_irreducible,
    make_field,
    reciprocal_conjugate,
    zsigmondy,
)


def necklace_count(r, d):
    """Independent oracle: (1/d) sum_{e|d} mobius(e) r^(d/e)."""

    def mobius(n):
        f = factorize(n)
        if any(e > 1 for e in f.values()):
            return 0
        return -1 if len(f) % 2 else 1

    total = sum(mobius(e) * r ** (d // e) for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return total // d


def test_enumerate_examples():
    assert [f.coeffs for f in enumerate_irreducibles(2, 1)] == [(1, 1)]
    assert [f.coeffs for f in enumerate_irreducibles(2, 2)] == [(1, 1), (1, 1, 1)]
    assert [f.coeffs for f in enumerate_irreducibles(3, 1)] == [(1, 1), (2, 1)]


def test_counts_match_necklace_formula():
    for r in (2, 3, 5, 7):
        max_d = 6 if r <= 3 else 4
        polys = enumerate_irreducibles(r, max_d)
        for d in range(1, max_d + 1):
            got = sum(1 for f in polys if f.degree == d)
            expected = necklace_count(r, d)
            if d == 1:
                expected -= 1  # t itself is excluded
            assert got == expected


def test_enumerate_deterministic_and_constant_terms():
    polys = enumerate_irreducibles(3, 3)
    assert polys == sorted(polys)
    assert all(f.constant_term != 0 for f in polys)


def test_reciprocal_examples():
    assert reciprocal_conjugate(MonicPoly(2, (1, 1))).coeffs == (1, 1)
    assert reciprocal_conjugate(MonicPoly(3, (2, 1, 1))).coeffs == (2, 2, 1)


def test_reciprocal_involution_and_irreducibility():
    for r in (2, 3):
        for f in enumerate_irreducibles(r, 3):
            g = reciprocal_conjugate(f)
            assert g.degree == f.degree
            assert is_irreducible(g)
            assert reciprocal_conjugate(g) == f


def test_reciprocal_needs_nonzero_constant():
    with pytest.raises(ValueError):
        reciprocal_conjugate(MonicPoly(3, (0, 1, 1)))


def test_field_f2():
    f = make_field(2, 1)
    assert f.generator == 1
    assert f.q == 2


def test_field_f4():
    f = make_field(2, 2)
    assert f.modulus.coeffs == (1, 1, 1)
    g = f.generator
    assert f.mul(g, g) == f.add(g, 1)  # g^2 = g + 1
    assert f.frobenius(g) == f.mul(g, g)
    assert f.frobenius(f.mul(g, g)) == g


def test_discrete_log_round_trip():
    for (p, n) in ((3, 2), (2, 4), (5, 2)):
        f = make_field(p, n)
        for k in range(f.q - 1):
            assert f.discrete_log(f.power(f.generator, k)) == k


def test_field_axioms_small():
    f = make_field(3, 2)
    elems = range(f.q)
    for a in elems:
        if a:
            assert f.mul(a, f.inverse(a)) == 1
        for b in elems:
            assert f.mul(a, b) == f.mul(b, a)
            assert f.add(a, b) == f.add(b, a)
    # frobenius is additive and multiplicative of order n
    for a in elems:
        for b in elems:
            assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
            assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))
    for a in elems:
        x = a
        for _ in range(f.n):
            x = f.frobenius(x)
        assert x == a


def test_field_cap():
    with pytest.raises(ValueError):
        FiniteField(2, 21)


def test_zsigmondy_examples():
    assert zsigmondy(2, 10) == 11
    assert zsigmondy(2, 6) is None
    assert zsigmondy(3, 2) is None
    assert zsigmondy(2, 1) is None
    assert zsigmondy(2, 12) == 13


def test_zsigmondy_congruence():
    for p in (2, 3, 5, 7):
        for n in range(1, 14):
            q = zsigmondy(p, n)
            if q is not None:
                assert (p**n - 1) % q == 0
                assert (q - 1) % n == 0
                for r in range(1, n):
                    assert (p**r - 1) % q != 0
