import re
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import (CYCLIC_2, CYCLIC_3, L5_3_PRINTED, LOOP_5, LOOP_5_ENVELOPE, LOOP_6_ZERO_DIVISOR,
                      Z5_GROUPOID_3_4)
from nearring_lab.axioms import check_system
from nearring_lab.construct import (Algebra2, FormalSums, enumerate_ln_class, enumerate_zn_class,
                                    ln_loop, magma_nearring, matrix_index, matrix_product, mod_p_envelope,
                                    near_matrix, near_poly, planar_nearring, poly_coefficients,
                                    poly_degree, snp_zp, zn_groupoid, zn_nearring, zn_seminearring)
from nearring_lab.tables import BudgetExceeded, MalformedInput, classify


def test_zn_groupoid_matches_printed_table():
    assert zn_groupoid(5, 3, 4).op == Z5_GROUPOID_3_4.op


def test_ln_loop_matches_printed_table():
    m = ln_loop(5, 3)
    assert m.labels == L5_3_PRINTED.labels and m.op == L5_3_PRINTED.op
    assert classify(m).kind == "commutative-loop"


@pytest.mark.parametrize("mode,count", [("coprime", 10), ("gcd-d", 12), ("unrestricted", 16)])
def test_z5_class_sizes(mode, count):
    assert len(enumerate_zn_class(5, mode)) == count


def test_class_members_obey_their_constraints():
    for spec in enumerate_zn_class(7, "coprime"):
        _, t, u = spec.params
        assert t != u and gcd(t, u) == 1


def test_l5_class():
    assert enumerate_ln_class(5) == [2, 3, 4]
    with pytest.raises(ValueError):
        enumerate_ln_class(6)
    with pytest.raises(ValueError):
        ln_loop(9, 3)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_every_class_loop_has_even_order_and_is_not_a_group(n):
    for m in enumerate_ln_class(n):
        loop = ln_loop(n, m)
        c = classify(loop)
        assert loop.n == n + 1 and loop.n % 2 == 0
        assert c.kind in ("loop", "commutative-loop")


def test_ln_commutative_exactly_when_2m_is_1():
    for n in (5, 7, 9):
        for m in enumerate_ln_class(n):
            assert classify(ln_loop(n, m)).commutative == ((2 * m) % n == 1)


def test_zn_nearring_and_seminearring_tables():
    n = zn_nearring(6)
    assert n.mul[4][1] == 4 and n.add[4][5] == 3 and n.zero == 0
    s = zn_seminearring(6)
    assert s.add[4][5] == 2 and s.zero == 1


def test_near_matrix_identity_times_anything_is_all_ones():
    alg = near_matrix(zn_nearring(5), 2)
    assert alg.n == 5 ** 4
    ident = matrix_index(alg, [[1, 0], [0, 1]])
    ones = matrix_index(alg, [[1, 1], [1, 1]])
    assert set(alg.mul[ident]) == {ones}


def test_zero_row_sum_matrix_annihilates_everything():
    alg = near_matrix(zn_nearring(5), 2)
    a = matrix_index(alg, [[1, 4], [0, 0]])
    assert set(alg.mul[a]) == {alg.zero}


def test_near_matrix_table_agrees_with_direct_product():
    base = zn_nearring(3)
    alg = near_matrix(base, 2)
    shape = lambda i: tuple(tuple(int(x) for x in r.split()) for r in alg.labels[i][1:-1].split("|"))  # noqa: E731
    for a in range(0, alg.n, 7):
        for b in range(0, alg.n, 5):
            assert shape(alg.mul[a][b]) == matrix_product(base, shape(a), shape(b))


def test_near_matrix_rejects_non_projection_base():
    with pytest.raises(ValueError):
        near_matrix(planar_nearring(5, 2), 2)


def _parse_poly(text):
    coeffs = [0, 0, 0]
    for term in text.replace(" ", "").split("+"):
        m = re.fullmatch(r"(\d*)(x?)(?:\^(\d))?", term)
        c = int(m.group(1) or 1)
        deg = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[deg] = c
    return tuple(coeffs)


PRINTED_Z3_POLYS = ("0, 1, 2, x, 2x, x + 2, x + 1, 2x + 1, 2x + 2, x^2, 2x^2, x^2 + 2, x^2 + 1, x^2 + x, "
                    "x + 2x^2, x + x^2 + 1, x + 2x^2 + 1, 2x + x^2 + 1, 2 + x + x^2, 2x + 2x^2 + 2, "
                    "2x + 2 + x^2, 2x^2 + 2x + 1, x + 2x^2 + 2, 2 + 2x^2, 2x^2 + 2x, 2x^2 + 1, 2x + x^2")


def test_near_poly_has_the_printed_27_elements():
    alg = near_poly(3, 2)
    assert alg.n == 27
    printed = {_parse_poly(p) for p in PRINTED_Z3_POLYS.split(",")}
    assert len(printed) == 27
    assert {poly_coefficients(alg, 3, 2, i) for i in range(27)} == printed


def test_near_poly_degree_of_product_is_degree_of_left_factor():
    alg = near_poly(3, 2)
    for p in range(alg.n):
        for q in range(alg.n):
            r = alg.mul[p][q]
            assert poly_degree(poly_coefficients(alg, 3, 2, r)) == poly_degree(poly_coefficients(alg, 3, 2, p))


def test_near_poly_budget():
    with pytest.raises(BudgetExceeded):
        near_poly(5, 6, budget=1000)


def test_formal_sum_all_elements_idempotent_for_odd_loop():
    fs = FormalSums(zn_nearring(2), LOOP_5)
    alpha = fs.total()
    assert fs.mul(alpha, alpha) == alpha


def test_formal_sum_all_elements_square_zero_for_even_loop():
    fs = FormalSums(zn_nearring(2), LOOP_6_ZERO_DIVISOR)
    alpha = fs.total()
    assert fs.mul(alpha, alpha) == fs.zero
    one_plus_a = fs.total(["1", "a"])
    assert fs.mul(one_plus_a, alpha) == fs.zero


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sum_of_all_loop_elements_over_z2(m):
    loop = ln_loop(5, m)
    fs = FormalSums(zn_nearring(2), loop)
    alpha = fs.total()
    assert fs.mul(alpha, alpha) == (fs.zero if loop.n % 2 == 0 else alpha)


def test_formal_sum_labels_and_element_builder():
    fs = FormalSums(zn_nearring(3), CYCLIC_2)
    x = fs.element({"1": "2", "g": "2"})
    assert fs.label(x) == "2+2g"
    assert fs.coefficient_sum(x) == 1
    assert fs.decode(fs.encode(x)) == x


def test_group_order_two_envelope_over_z2_is_the_group():
    env = mod_p_envelope(zn_nearring(2), CYCLIC_2)
    assert set(env.labels) == {"1", "g"}


def test_group_order_two_envelope_over_z3():
    env = mod_p_envelope(zn_nearring(3), CYCLIC_2)
    assert set(env.labels) == {"1", "g", "2+2g", "1+g"}


def test_group_order_two_envelope_over_z3_is_not_associative():
    env = mod_p_envelope(zn_nearring(3), CYCLIC_2)
    c = classify(env)
    assert not c.associative
    x, y, z = c.witnesses["associative"].elements
    assert env.op[env.op[x][y]][z] != env.op[x][env.op[y][z]]


def test_cyclic_three_envelope_over_z2():
    env = mod_p_envelope(zn_nearring(2), CYCLIC_3)
    assert set(env.labels) == {"1", "g", "g2", "1+g+g2"}


def test_loop_envelope_matches_printed_list():
    env = mod_p_envelope(zn_nearring(2), LOOP_5)
    assert env.n == 16 == 2 ** (LOOP_5.n - 1)
    assert set(env.labels) == set(LOOP_5_ENVELOPE)
    assert "1" in env.labels and env.op[env.index("1")][env.index("a")] == env.index("a")


def test_envelope_requires_identity():
    with pytest.raises(ValueError):
        mod_p_envelope(zn_nearring(2), zn_groupoid(3, 1, 2))


@pytest.mark.parametrize("index", [CYCLIC_2, CYCLIC_3])
def test_group_nearrings_over_z2_are_right_nearrings(index):
    assert check_system(magma_nearring(zn_nearring(2), index), "right-near-ring").passed


@pytest.mark.parametrize("index", [CYCLIC_2, CYCLIC_3])
def test_group_nearrings_over_z3_are_right_distributive_but_not_associative(index):
    v = check_system(magma_nearring(zn_nearring(3), index), "right-near-ring")
    assert v.conjunct("right-distributive").passed
    assert not v.conjunct("mul-associative").passed


def test_semigroup_nearring_over_z2():
    from nearring_lab.construct import zn_multiplicative

    assert check_system(magma_nearring(zn_nearring(2), zn_multiplicative(3)), "right-near-ring").passed


def test_magma_nearring_budget():
    with pytest.raises(BudgetExceeded):
        magma_nearring(zn_nearring(2), LOOP_5, budget=10)


def test_planar_nearring_rejects_bad_parameters():
    with pytest.raises(ValueError):
        planar_nearring(6, 1)
    with pytest.raises(ValueError):
        planar_nearring(7, 4)


def test_snp_construction_passes_for_p_at_least_five():
    assert check_system(snp_zp(5), "snp-ring").passed
    assert not check_system(snp_zp(3), "snp-ring").passed


def test_algebra_json_round_trip_and_zero_check():
    alg = zn_nearring(4)
    assert Algebra2.from_json(alg.to_json()) == alg
    with pytest.raises(MalformedInput):
        Algebra2(alg.labels, alg.add, alg.mul, zero=2)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.data())
def test_zn_groupoid_formula(n, data):
    t = data.draw(st.integers(1, n - 1))
    u = data.draw(st.integers(1, n - 1))
    g = zn_groupoid(n, t, u)
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert g.op[a][b] == (t * a + u * b) % n
