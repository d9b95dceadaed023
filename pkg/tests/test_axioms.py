from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import (BIPOTENT_N1, BIPOTENT_N2, BIPOTENT_N3, LOOP_NEARRING_5, S_LOOP_NEARRING)
from nearring_lab.axioms import (IDENTITIES, SYSTEMS, check_identity, check_predicate, check_system,
                                 is_subnearring)
from nearring_lab.construct import (Algebra2, ln_loop, near_matrix, near_poly, snp_zp, zn_nearring,
                                    zn_seminearring)
from nearring_lab.tables import Magma
from oracles import IDENTITY_TERMS, holds


def _replays_assoc(t, w):
    x, y, z = w
    return t[t[x][y]][z] != t[x][t[y][z]]


def test_two_element_nearring_is_nearfield():
    v = check_system(zn_nearring(2), "near-field")
    assert v.passed
    assert all(c.passed for c in v.conjuncts)


def test_zn_nearring_is_not_nearfield_for_composite():
    v = check_system(zn_nearring(4), "near-field")
    assert not v.passed
    assert v.conjunct("add-group").passed
    assert not v.conjunct("nonzero-mul-group").passed


def test_loop_nearring_passes_loop_system_only():
    assert check_system(LOOP_NEARRING_5, "loop-near-ring").passed
    v = check_system(LOOP_NEARRING_5, "right-near-ring")
    assert not v.passed
    grp = v.conjunct("add-group")
    assert not grp.passed
    assert _replays_assoc(LOOP_NEARRING_5.add, grp.witness)
    # the additive loop is non-associative at a+(b+d)
    a, b, d = (LOOP_NEARRING_5.index(s) for s in "abd")
    assert _replays_assoc(LOOP_NEARRING_5.add, (a, b, d))
    # the remaining conjuncts still hold
    assert v.conjunct("mul-associative").passed


@pytest.mark.parametrize("alg", [BIPOTENT_N1, BIPOTENT_N2, BIPOTENT_N3], ids=["n1", "n2", "n3"])
def test_left_bipotent_examples(alg):
    assert check_system(alg, "right-near-ring").passed
    assert check_predicate(alg, "left-bipotent").passed


def test_left_bipotent_definition_matches_scan():
    for alg in (BIPOTENT_N1, BIPOTENT_N2, BIPOTENT_N3, zn_nearring(6)):
        M, n = alg.mul, alg.n
        expect = all({M[m][a] for m in range(n)} == {M[m][M[a][a]] for m in range(n)} for a in range(n))
        assert check_predicate(alg, "left-bipotent").passed == expect


def _ring(n):
    return Algebra2.from_functions(tuple(map(str, range(n))), lambda a, b: (a + b) % n,
                                   lambda a, b: (a * b) % n)


def test_s_a_in_na_example():
    assert check_predicate(S_LOOP_NEARRING, "s-a-in-Na").passed
    zero_mul = Algebra2.from_functions(("0", "1", "2"), lambda a, b: (a + b) % 3, lambda a, b: 0)
    v = check_predicate(zero_mul, "s-a-in-Na")
    assert not v.passed
    (a,) = v.witness
    assert all(zero_mul.mul[m][a] != a for m in range(3))


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_zn_nearring_is_right_nearring(n):
    assert check_system(zn_nearring(n), "right-near-ring").passed


@pytest.mark.parametrize("n", [2, 3, 5])
def test_zn_seminearring(n):
    assert check_system(zn_seminearring(n), "seminear-ring").passed


def test_near_poly_is_right_nearring():
    assert check_system(near_poly(3, 2), "right-near-ring").passed
    assert check_system(near_poly(2, 3), "right-near-ring").passed


def test_one_by_one_near_matrix_is_right_nearring():
    assert check_system(near_matrix(zn_nearring(4), 1), "right-near-ring").passed


@pytest.mark.parametrize("n", [2, 3])
def test_row_sum_matrix_product_is_not_associative(n):
    # (AB)C has row sums k*s while A(BC) keeps s, so k = 2 breaks associativity
    alg = near_matrix(zn_nearring(n), 2)
    v = check_system(alg, "right-near-ring")
    assert v.conjunct("add-group").passed
    assert v.conjunct("right-distributive").passed
    w = v.conjunct("mul-associative").witness
    assert _replays_assoc(alg.mul, w)


def test_ring_and_field():
    assert check_system(_ring(5), "field").passed
    assert check_system(_ring(6), "ring").passed
    v = check_system(_ring(6), "field")
    assert not v.passed and v.conjunct("add-abelian-group").passed
    assert not check_system(zn_nearring(3), "ring").passed


def test_snp_zp_threshold():
    assert check_system(snp_zp(5), "snp-ring").passed
    assert check_system(snp_zp(7), "snp-ring").passed
    assert not check_system(snp_zp(3), "snp-ring").passed


def test_unknown_names_rejected():
    with pytest.raises(ValueError):
        check_system(zn_nearring(2), "not-a-system")
    with pytest.raises(ValueError):
        check_identity(zn_nearring(2), "not-an-identity")
    with pytest.raises(ValueError):
        check_predicate(zn_nearring(2), "not-a-predicate")


def test_verdict_json_shape():
    doc = check_system(LOOP_NEARRING_5, "right-near-ring").to_json()
    assert doc["pass"] is False and doc["id"] == "right-near-ring"
    assert {c["id"] for c in doc["conjuncts"]} >= {"add-group", "mul-associative"}
    assert set(SYSTEMS) >= {"right-near-ring", "loop-near-ring", "snp-ring"}


@pytest.mark.parametrize("m", [3, 4])
def test_ln_loop_fails_moufang_and_bol(m):
    loop = ln_loop(5, m)
    t = loop.op
    for name in ("moufang1", "moufang2", "moufang3", "bol"):
        v = check_identity(loop, name)
        assert not v.passed
        env = dict(zip("xyz", v.witness))
        assert not _holds_at(t, name, env)
    assert not check_identity(loop, "moufang").passed


def _holds_at(t, name, env):
    from oracles import evaluate, parse_term

    lhs, rhs = IDENTITY_TERMS[name]
    return evaluate(parse_term(lhs), t, env) == evaluate(parse_term(rhs), t, env)


def test_group_satisfies_every_loop_identity():
    t = zn_nearring(6).add
    m = Magma(tuple(str(i) for i in range(6)), t)
    for name in ("moufang1", "moufang2", "moufang3", "bol", "left-alt", "right-alt", "flexible"):
        assert check_identity(m, name).passed


@st.composite
def magmas(draw):
    n = draw(st.integers(1, 6))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return Magma(tuple(str(i) for i in range(n)), tuple(tuple(r) for r in rows))


@settings(max_examples=100, deadline=None)
@given(magmas())
def test_identity_scan_agrees_with_term_oracle(m):
    for name, (lhs, rhs) in IDENTITY_TERMS.items():
        v = check_identity(m, name)
        assert v.passed == holds(m.op, lhs, rhs), name
        if not v.passed:
            names = sorted(set(lhs + rhs) - set("()"))
            from oracles import evaluate, parse_term

            env = dict(zip(names, v.witness))
            assert evaluate(parse_term(lhs), m.op, env) != evaluate(parse_term(rhs), m.op, env)


@settings(max_examples=60, deadline=None)
@given(magmas())
def test_alternative_is_conjunction(m):
    alt = check_identity(m, "alternative").passed
    assert alt == (check_identity(m, "left-alt").passed and check_identity(m, "right-alt").passed)


def test_p_nearring_identity():
    assert check_identity(zn_nearring(2), "p-near-ring", p=2).passed
    assert check_identity(zn_nearring(3), "p-near-ring", p=3).passed
    assert not check_identity(zn_nearring(4), "p-near-ring", p=2).passed


def test_subnearring():
    alg = zn_nearring(6)
    assert is_subnearring(alg, [0, 2, 4]).passed
    assert is_subnearring(alg, [0, 3]).passed
    assert not is_subnearring(alg, [0, 1]).passed


def test_ifp_on_integral_domain():
    assert check_predicate(_ring(5), "ifp").passed
    # commutative rings have IFP
    assert check_predicate(_ring(6), "ifp").passed
    M, z = BIPOTENT_N1.mul, BIPOTENT_N1.zero
    expect = all(M[a][b] != z or M[M[a][m]][b] == z for a, b, m in product(range(4), repeat=3))
    assert check_predicate(BIPOTENT_N1, "ifp").passed == expect


def test_identities_listed():
    assert {"moufang", "bol", "left-alt", "right-alt", "p-near-ring"} <= set(IDENTITIES)
