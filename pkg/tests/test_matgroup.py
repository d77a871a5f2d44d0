import pytest

from kgv.group_orders import sp_order
from kgv.matgroup import (
    GroupTooLarge,
    closure,
    matrix_space,
    poly_eval_matrix,
    symplectic_form_rows,
    symplectic_generators,
    symplectic_group,
)


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 2), (7, 2)])
def test_space_arithmetic(p, n):
    space = matrix_space(p, n)
    ident = space.identity
    rows = [[(i * n + j + 1) % p for j in range(n)] for i in range(n)]
    rows[0][0] = 1  # keep it likely invertible; fall back if singular
    m = space.from_rows(rows)
    try:
        minv = space.inv(m)
    except ZeroDivisionError:
        rows[0] = [1] + [0] * (n - 1)
        rows[1] = [0, 1] + [0] * (n - 2)
        m = space.from_rows(rows)
        minv = space.inv(m)
    assert space.mul(m, minv) == ident
    assert space.mul(minv, m) == ident
    assert space.transpose(space.transpose(m)) == m
    assert space.rank(ident) == n
    assert space.to_rows(space.from_rows(space.to_rows(m))) == space.to_rows(m)


def test_vector_codes_round_trip():
    for (p, n) in ((2, 4), (3, 3)):
        space = matrix_space(p, n)
        for code in range(space.vec_count):
            assert space.vec_code(space.vec_tuple(code)) == code


def test_apply_matches_row_action():
    space = matrix_space(3, 2)
    m = space.from_rows([[1, 2], [1, 1]])
    v = (2, 1)
    expected = tuple((v[0] * space.to_rows(m)[0][j] + v[1] * space.to_rows(m)[1][j]) % 3 for j in range(2))
    assert space.vec_tuple(space.apply(space.vec_code(v), m)) == expected


def test_poly_eval_matrix():
    space = matrix_space(2, 2)
    m = space.from_rows([[0, 1], [1, 1]])
    # m satisfies t^2 + t + 1 over F_2
    value = poly_eval_matrix(space, (1, 1, 1), m)
    assert value == space.scale(space.identity, 0)


def test_generators_preserve_form():
    for (m, q) in ((2, 3), (3, 2), (1, 7)):
        space, gens = symplectic_generators(m, q)
        j = space.from_rows(symplectic_form_rows(m))
        for g in gens:
            assert space.mul(g, space.mul(j, space.transpose(g))) == j


def test_symplectic_orders():
    assert symplectic_group(1, 5).order == sp_order(1, 5)
    assert symplectic_group(2, 2).order == 720


def test_closure_cap():
    space = matrix_space(3, 2)
    gens = [space.from_rows([[1, 1], [0, 1]]), space.from_rows([[1, 0], [1, 1]])]
    with pytest.raises(GroupTooLarge):
        closure(space, gens, cap=10)


def test_closure_deterministic_order():
    space = matrix_space(3, 2)
    gens = [space.from_rows([[1, 1], [0, 1]]), space.from_rows([[1, 0], [1, 1]])]
    g1 = closure(space, gens)
    g2 = closure(space, gens)
    assert g1.elements == g2.elements
