import pytest
from hypothesis import given, settings, strategies as st

from fixtures import (BIPOTENT_N1, BIPOTENT_N2, CYCLIC_2, LOOP_5, NONCOMMUTATIVE_LOOP_6, S_LOOP_8,
                      S_LOOP_NEARRING)
from nearring_lab.construct import Algebra2, FormalSums, magma_nearring, zn_nearring
from nearring_lab.elements import (ELEMENT_KINDS, CertificateMismatch, classify_elements,
                                   distributive_set, element_set, nilpotency_index, normal_set,
                                   quasi_regular_set, replay, s_relative_elements)
from nearring_lab.ideals import Certificate, find_substructure
from nearring_lab.tables import NotApplicable

Z2 = zn_nearring(2)
CONTAINMENTS = [("s-idempotent", "idempotent"), ("s-zero-divisor", "zero-divisor"),
                ("s-unit", "unit"), ("s-nilpotent", "nilpotent")]


def _safe_set(alg, kind):
    try:
        return set(element_set(alg, kind))
    except NotApplicable:
        return None


@pytest.mark.parametrize("n", [2, 5, 6])
def test_zn_nearring_all_idempotent_none_normal(n):
    alg = zn_nearring(n)
    assert element_set(alg, "idempotent") == tuple(range(n))
    assert normal_set(alg) == ()
    assert distributive_set(alg) == (0,)


def test_loop_sum_squares_to_zero_in_even_loop():
    alg = magma_nearring(Z2, NONCOMMUTATIVE_LOOP_6)
    everything = alg.labels.index("e+a1+a2+a3+a4+a5")
    assert alg.mul[everything][everything] == alg.zero
    assert everything in element_set(alg, "zero-divisor")


@pytest.mark.parametrize("loop,odd", [(LOOP_5, True), (NONCOMMUTATIVE_LOOP_6, False), (S_LOOP_8, False)],
                         ids=["5", "6", "8"])
def test_all_ones_sum_parity(loop, odd):
    fs = FormalSums(Z2, loop)
    t = fs.total()
    sq = fs.mul(t, t)
    assert (sq == t) == odd
    assert (sq == fs.zero) == (not odd)


def test_one_plus_loop_element_is_quasi_regular():
    loop = NONCOMMUTATIVE_LOOP_6
    alg = magma_nearring(Z2, loop)
    qr = quasi_regular_set(alg, "circle")
    e = loop.labels[0]
    for m in loop.labels[1:]:
        x = alg.labels.index(f"{e}+{m}")
        assert x in qr.both
    for m in loop.labels:
        assert alg.labels.index(m) not in qr.right
        assert alg.labels.index(m) not in qr.left
    assert alg.zero in qr.both


def test_circle_witnesses_replay():
    alg = magma_nearring(Z2, NONCOMMUTATIVE_LOOP_6)
    for r in classify_elements(alg, "circle-quasi-regular"):
        assert replay(alg, "circle-quasi-regular", r.element, r.witnesses["circle-quasi-regular"])


def test_group_nearring_over_two_element_group():
    alg = magma_nearring(Z2, CYCLIC_2)
    lab = lambda xs: {alg.labels[x] for x in xs}  # noqa: E731
    assert lab(element_set(alg, "unit")) == {"1", "g"}
    assert lab(element_set(alg, "s-unit")) == set()
    assert lab(element_set(alg, "nilpotent")) == {"0", "1+g"}
    assert lab(element_set(alg, "zero-divisor")) == {"1+g"}


def test_nilpotency_index():
    alg = magma_nearring(Z2, CYCLIC_2)
    assert nilpotency_index(alg, alg.labels.index("1+g")) == 2
    assert nilpotency_index(alg, alg.labels.index("g")) is None


def test_unit_needs_identity():
    with pytest.raises(NotApplicable):
        classify_elements(zn_nearring(4), "unit")


def test_unknown_kind():
    with pytest.raises(ValueError):
        classify_elements(Z2, "nope")


FIXED = [zn_nearring(4), zn_nearring(6), BIPOTENT_N1, BIPOTENT_N2, S_LOOP_NEARRING,
         magma_nearring(Z2, CYCLIC_2), magma_nearring(Z2, LOOP_5)]


@pytest.mark.parametrize("alg", FIXED)
def test_smarandache_containments(alg):
    for s_kind, kind in CONTAINMENTS:
        small, big = _safe_set(alg, s_kind), _safe_set(alg, kind)
        if small is not None:
            assert small <= big


@pytest.mark.parametrize("alg", FIXED)
def test_every_witness_replays(alg):
    for kind in ("idempotent", "zero-divisor", "unit", "nilpotent", "s-idempotent", "s-zero-divisor",
                 "s-unit"):
        try:
            reports = classify_elements(alg, kind)
        except NotApplicable:
            continue
        for r in reports:
            assert replay(alg, kind, r.element, r.witnesses[kind]), (kind, r)


@st.composite
def random_nearring_tables(draw):
    n = draw(st.integers(2, 5))
    mul = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return Algebra2.from_functions(tuple(map(str, range(n))), lambda a, b: (a + b) % n,
                                   lambda a, b: mul[a][b])


@settings(max_examples=80, deadline=None)
@given(random_nearring_tables())
def test_containments_on_random_tables(alg):
    for s_kind, kind in CONTAINMENTS:
        small, big = _safe_set(alg, s_kind), _safe_set(alg, kind)
        if small is not None:
            assert small <= big


def test_relative_elements_use_certificate():
    alg = magma_nearring(Z2, CYCLIC_2)
    cert = find_substructure(alg.mul_magma(), "group-in-semigroup").certificates[0]
    found = s_relative_elements(alg, "s-idempotent", Certificate(cert.subset, "group"))
    assert set(found) <= set(element_set(alg, "idempotent"))
    with pytest.raises(CertificateMismatch):
        s_relative_elements(alg, "s-idempotent", Certificate((3,), "near-field"))


def test_kind_list():
    assert len(ELEMENT_KINDS) == 14
