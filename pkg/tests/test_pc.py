import pytest
from hypothesis import given, settings, strategies as st

from pcgroup.families import Z, family, x, y
from pcgroup.pc import PresentationError, load_presentation

from oracles import (
    CYCLIC9,
    EXTRASPECIAL27,
    KLEIN,
    QUATERNION,
    all_words,
    brute_inverse,
    doc,
    repeated_squaring_order,
    small,
)


def word(pres, *gens):
    w = [0] * pres.ngens
    for g in gens:
        w[g] += 1
    return tuple(w)


class TestLoad:
    def test_klein(self):
        pres = load_presentation(KLEIN)
        assert pres.ngens == 2 and pres.min_gens == 2
        assert all(not any(w) for w in pres.power_rhs)
        assert pres.conj_rhs == {}

    def test_family_document_round_trip(self):
        h = family(1)
        pres = load_presentation(h.to_document())
        assert (pres.ngens, pres.min_gens) == (6, 4)
        assert pres.power_rhs == h.power_rhs
        assert dict(pres.conj_rhs) == dict(h.conj_rhs)
        assert dict(pres.definitions) == dict(h.definitions)

    def test_conjugate_tail_below_j_rejected(self):
        bad = doc(2, 3, 3, [1, 1, 1], conjugates={"1,3": [[2, 1]]})
        with pytest.raises(PresentationError, match="not above"):
            load_presentation(bad)

    @pytest.mark.parametrize(
        "bad, msg",
        [
            (doc(2, 2, 2, [1, 1], powers={"1": [[2, 2]]}), "out of range"),
            (doc(2, 2, 1, [2, 1]), "non-decreasing"),
            (doc(2, 2, 2, [1, 2]), "weight 1"),
            (doc(2, 2, 2, [1, 1], extra=1), "unknown keys"),
            (doc(4, 2, 2, [1, 1]), "prime"),
            (doc(2, 2, 2, [1, 1], powers={"2": [[1, 1]]}), "not above"),
            (doc(2, 3, 2, [1, 1, 1], conjugates={"1,2": [[3, 1]]}), "weight"),
            (doc(2, 2, 2, [1, 1], conjugates={"2,1": [[2, 1]]}), "i < j"),
            ({"p": 2}, "missing"),
        ],
    )
    def test_malformed(self, bad, msg):
        with pytest.raises(PresentationError, match=msg):
            load_presentation(bad)

    def test_bad_definition_rejected(self):
        bad = doc(2, 3, 2, [1, 1, 2], conjugates={"1,2": [[3, 1]]},
                  definitions={"3": ["pow", 1]})
        with pytest.raises(PresentationError, match="definition"):
            load_presentation(bad)


class TestCollect:
    def test_table_row_x3_x2_x1(self):
        h = family(3)
        assert h.collect([(x(3), 1), (x(2), 1), (x(1), 1)]) == word(h, x(1), x(2), x(3), y(1))

    def test_table_row_x4_x3_x1(self):
        h = family(3)
        got = h.collect([(x(4), 1), (x(3), 1), (x(1), 1)])
        assert got == word(h, x(1), x(3), x(4), Z, y(1))

    def test_empty_word(self):
        assert family(3).collect([]) == (0,) * 8

    def test_negative_exponent(self):
        h = family(3)
        assert h.collect([(x(1), -1)]) == h.gen(x(1))
        assert h.collect([(x(1), -1)]) == brute_inverse(h, h.gen(x(1)))

    def test_steps_are_counted(self):
        h = family(5, (1, 1, 0, 1))
        _, steps = h.collect_with_steps([(k, 1) for k in reversed(range(h.ngens))] * 3)
        assert 0 < steps < 10**6

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_normal_word_collects_to_itself(self, data):
        h = family(data.draw(st.integers(1, 6)), data.draw(st.sampled_from([(0, 0, 0, 0), (1, 0, 1, 1)])))
        a = data.draw(st.tuples(*[st.integers(0, 1)] * h.ngens))
        assert h.collect([(k, e) for k, e in enumerate(a)]) == a


class TestArithmetic:
    def test_identity_is_neutral(self):
        h = family(2)
        for a in all_words(h)[::7]:
            assert h.multiply(h.identity(), a) == a == h.multiply(a, h.identity())

    def test_x2_x1(self):
        h = family(1)
        assert h.multiply(h.gen(x(2)), h.gen(x(1))) == word(h, x(1), x(2), Z)

    def test_y1_squared(self):
        h = family(2)
        assert h.multiply(h.gen(y(1)), h.gen(y(1))) == h.gen(y(2))

    def test_inverse(self):
        h = family(1, (1, 0, 0, 0))
        assert h.inverse(h.identity()) == h.identity()
        expected = brute_inverse(h, h.gen(x(1)))
        assert expected == word(h, x(1), Z)
        assert h.inverse(h.gen(x(1))) == expected

    def test_power(self):
        h = family(3)
        a = word(h, x(1), x(3))
        assert h.power(a, 0) == h.identity()
        assert h.power(a, 3) == h.product([a, a, a])
        assert h.power(a, -1) == h.inverse(a)

    def test_conjugate_and_commutator(self):
        h = family(3, (0, 1, 1, 0))
        assert h.commutator(h.gen(x(3)), h.gen(x(1))) == h.gen(y(1))
        a = word(h, x(2), y(2))
        assert h.conjugate(a, h.identity()) == a

    def test_commutator_of_y1_with_x1(self):
        # y_1^{x_1} = y_1 y_2, so [y_1, x_1] = y_2 and [x_1, y_1] = y_2^-1 = y_2 y_3 in H_3
        h = family(3)
        assert h.commutator(h.gen(y(1)), h.gen(x(1))) == h.gen(y(2))
        assert h.commutator(h.gen(x(1)), h.gen(y(1))) == h.inverse(h.gen(y(2)))
        assert h.inverse(h.gen(y(2))) == word(h, y(2), y(3))

    def test_element_order(self):
        h1, h2 = family(1), family(2)
        assert h1.element_order(h1.identity()) == 1
        assert h1.element_order(h1.gen(Z)) == 2
        assert repeated_squaring_order(h2, h2.gen(y(1))) == 4
        assert h2.element_order(h2.gen(y(1))) == 4

    def test_odd_prime(self):
        c9 = load_presentation(CYCLIC9)
        g = c9.gen(0)
        assert c9.element_order(g) == 9
        assert c9.power(g, 3) == (0, 1)
        e27 = load_presentation(EXTRASPECIAL27)
        a, b = e27.gen(0), e27.gen(1)
        assert e27.commutator(b, a) == (0, 0, 1)
        assert e27.multiply(a, e27.inverse(a)) == e27.identity()

    def test_mismatched_words_rejected(self):
        with pytest.raises(PresentationError):
            family(1).multiply((0,) * 6, (0,) * 7)


PRESENTATIONS = [family(n, e) for n in (1, 2, 4, 8) for e in ((0, 0, 0, 0), (1, 1, 1, 1), (0, 1, 1, 0))]
PRESENTATIONS += [small("QUATERNION"), small("DIHEDRAL8"), small("CYCLIC9"), small("EXTRASPECIAL27")]


@st.composite
def pres_and_elements(draw, k=3):
    pres = draw(st.sampled_from(PRESENTATIONS))
    el = st.tuples(*[st.integers(0, pres.prime - 1)] * pres.ngens)
    return pres, [draw(el) for _ in range(k)]


class TestGroupLaws:
    @given(pres_and_elements())
    @settings(max_examples=300, deadline=None)
    def test_associativity(self, pe):
        pres, (a, b, c) = pe
        assert pres.multiply(pres.multiply(a, b), c) == pres.multiply(a, pres.multiply(b, c))

    @given(pres_and_elements())
    @settings(max_examples=200, deadline=None)
    def test_inverse_laws(self, pe):
        pres, (a, b, _) = pe
        e = pres.identity()
        assert pres.multiply(a, pres.inverse(a)) == e == pres.multiply(pres.inverse(a), a)
        assert pres.inverse(pres.multiply(a, b)) == pres.multiply(pres.inverse(b), pres.inverse(a))

    @given(pres_and_elements())
    @settings(max_examples=200, deadline=None)
    def test_commutator_consistency(self, pe):
        pres, (a, b, _) = pe
        assert pres.multiply(a, pres.commutator(a, b)) == pres.conjugate(a, b)

    @given(pres_and_elements(k=1))
    @settings(max_examples=200, deadline=None)
    def test_order_divides_group_order(self, pe):
        pres, (a,) = pe
        assert pres.prime**pres.ngens % pres.element_order(a) == 0
        assert pres.power(a, pres.element_order(a)) == pres.identity()


def test_quaternion_arithmetic():
    q = load_presentation(QUATERNION)
    a, b = q.gen(0), q.gen(1)
    assert q.element_order(a) == q.element_order(b) == 4
    assert q.multiply(a, a) == q.multiply(b, b)
