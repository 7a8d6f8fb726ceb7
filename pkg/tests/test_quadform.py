from dataclasses import astuple
from itertools import product

import numpy as np
import pytest

from pcgroup.analysis import analyze
from pcgroup.automorphism import out_c
from pcgroup.families import CLASS_REPRESENTATIVES, EPSILONS, Z, family, x, y
from pcgroup.quadform import (
    ONE,
    T,
    ZERO,
    WElem,
    apply_h,
    bilinear_matrix,
    classify_epsilons,
    congruence,
    eval_form,
    eval_quad,
    gl,
    identity_matrix,
    induced_h,
    matinv,
    matmul,
    pseudo_isometric,
    quad_matrix,
    satisfies,
)

VECTORS = list(product((0, 1), repeat=4))


def group_element(h, v):
    return h.collect([(x(i + 1), e) for i, e in enumerate(v)])


def mod_b(w):
    # gamma_2 / <y_2, ...> identified with W: z -> 1, y_1 -> t
    return WElem(w[Z], w[y(1)])


def group_q(h, v):
    a = group_element(h, v)
    return mod_b(h.multiply(a, a))


def group_b(h, u, v):
    return mod_b(h.commutator(group_element(h, u), group_element(h, v)))


class TestRing:
    def test_arithmetic(self):
        assert T * T == ZERO
        assert ONE * T == T
        assert (ONE + T) * (ONE + T) == ONE
        assert ONE + ONE == ZERO
        for v in range(4):
            assert int(WElem.from_int(v)) == v
        assert [str(WElem.from_int(v)) for v in range(4)] == ["0", "1", "t", "1+t"]


class TestMatrices:
    def test_quad_matrix(self):
        q = quad_matrix((0, 0, 0, 0))
        assert [q[i][i] for i in range(4)] == [ZERO] * 4
        assert (q[0][1], q[0][2], q[0][3], q[1][2], q[1][3], q[2][3]) == (ONE, T, ONE, ONE, ZERO, ZERO)
        assert all(q[i][j] == ZERO for i in range(4) for j in range(i))
        q = quad_matrix((1, 1, 1, 1))
        assert [q[i][i] for i in range(4)] == [ONE] * 4

    def test_bilinear_zero_diagonal_and_independent_of_eps(self):
        bs = {bilinear_matrix(quad_matrix(e)) for e in EPSILONS}
        assert len(bs) == 1
        b = bs.pop()
        assert all(b[i][i] == ZERO for i in range(4))

    def test_eval_examples(self):
        assert eval_quad(quad_matrix((0, 0, 0, 0)), (0, 0, 0, 0)) == ZERO
        assert eval_quad(quad_matrix((0, 0, 0, 0)), (1, 0, 1, 0)) == T
        assert eval_quad(quad_matrix((0, 1, 0, 0)), (0, 1, 0, 0)) == ONE

    @pytest.mark.parametrize("eps", EPSILONS)
    def test_matches_group(self, eps):
        h = family(2, eps)
        q = quad_matrix(eps)
        for v in VECTORS:
            assert eval_quad(q, v) == group_q(h, v)

    def test_x1x3_squared_in_group(self):
        h = family(2)
        a = group_element(h, (1, 0, 1, 0))
        sq = h.multiply(a, a)
        assert sq == h.multiply(h.gen(y(1)), h.gen(y(2)))
        assert mod_b(sq) == T

    @pytest.mark.parametrize("eps", EPSILONS)
    def test_polarization_on_group(self, eps):
        h = family(2, eps)
        b = bilinear_matrix(quad_matrix(eps))
        for u, v in product(VECTORS, repeat=2):
            uv = tuple(a ^ c for a, c in zip(u, v))
            assert group_b(h, u, v) == group_q(h, uv) + group_q(h, u) + group_q(h, v)
            assert eval_form(b, u, v) == group_b(h, u, v)


class TestGL:
    def test_order(self):
        expected = (2**4 - 1) * (2**4 - 2) * (2**4 - 4) * (2**4 - 8)
        assert len(gl(4)) == expected == 20160
        assert len(gl(2)) == 6

    def test_against_determinant(self):
        count = 0
        for bits in product((0, 1), repeat=16):
            m = np.array(bits).reshape(4, 4)
            count += int(round(np.linalg.det(m))) % 2
        assert count == len(gl(4))

    def test_inverse(self):
        for g in gl(4)[::997]:
            assert matmul(g, matinv(g)) == identity_matrix(4)


def brute_h(g, eps, delta):
    b_eps, b_delta = bilinear_matrix(quad_matrix(eps)), bilinear_matrix(quad_matrix(delta))
    moved = congruence(g, b_delta)
    return [h for h in gl(2) if apply_h(h, b_eps) == moved]


class TestInducedH:
    def test_identity(self):
        for e in EPSILONS:
            assert induced_h(identity_matrix(4), e, e) == identity_matrix(2)

    def test_swap_e2_e4(self):
        g = ((1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0))
        hs = brute_h(g, (0, 1, 0, 0), (0, 0, 0, 1))
        got = induced_h(g, (0, 1, 0, 0), (0, 0, 0, 1))
        assert (got is None) == (not hs)
        assert got is None or [got] == hs

    def test_agrees_with_brute_force(self):
        for g in gl(4)[::211]:
            hs = brute_h(g, (0, 0, 0, 0), (0, 0, 0, 0))
            got = induced_h(g, (0, 0, 0, 0), (0, 0, 0, 0))
            assert hs == ([] if got is None else [got])

    def test_untwisted_solution_exists(self):
        b = bilinear_matrix(quad_matrix((0, 0, 0, 0)))
        fixers = [g for g in gl(4) if congruence(g, b) == b]
        assert len(fixers) > 1
        assert all(induced_h(g, (0, 0, 0, 0), (0, 0, 0, 0)) == identity_matrix(2) for g in fixers)


class TestPseudoIsometry:
    def test_reflexive(self):
        for e in EPSILONS:
            w = pseudo_isometric(e, e)
            assert w is not None and satisfies(e, e, w.g, w.h, full=True)
            assert satisfies(e, e, identity_matrix(4), identity_matrix(2), full=True)

    def test_representatives_apart(self):
        for a, b in product(CLASS_REPRESENTATIVES, repeat=2):
            assert (pseudo_isometric(a, b) is not None) == (a == b)

    def test_1000_hits_exactly_one_representative(self):
        hits = [r for r in CLASS_REPRESENTATIVES if pseudo_isometric((1, 0, 0, 0), r)]
        assert hits == [(0, 0, 0, 0)]

    def test_symmetric_and_transitive(self):
        cls = classify_epsilons()
        for e, (leader, w) in cls.witnesses.items():
            assert satisfies(leader, e, w.g, w.h, full=True)
            assert satisfies(e, leader, matinv(w.g), matinv(w.h), full=True)
        for c in cls.classes:
            for a, b in product(c, repeat=2):
                wa, wb = pseudo_isometric(c[0], a), pseudo_isometric(c[0], b)
                # a -> leader -> b
                g = matmul(matinv(wa.g), wb.g)
                h = matmul(matinv(wa.h), wb.h)
                assert satisfies(a, b, g, h, full=True)

    def test_basis_check_suffices(self):
        for d, e in product(EPSILONS, repeat=2):
            w = pseudo_isometric(d, e)
            if w is not None:
                assert satisfies(d, e, w.g, w.h, full=True)


class TestClassification:
    def test_four_classes(self):
        cls = classify_epsilons()
        assert len(cls.classes) == 4
        assert sorted(sum(cls.classes, [])) == sorted(EPSILONS)
        assert sum(cls.sizes) == 16
        assert len({cls.class_of(r) for r in CLASS_REPRESENTATIVES}) == 4

    def test_order_independent(self):
        a = classify_epsilons()
        b = classify_epsilons(order=list(reversed(EPSILONS)))
        assert sorted(map(sorted, a.classes)) == sorted(map(sorted, b.classes))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_group_invariants_agree(self, n):
        for cls in classify_epsilons().classes:
            summaries = {astuple(analyze(family(n, e))).__repr__() for e in cls}
            assert len(summaries) == 1

    @pytest.mark.slow
    def test_outc_agrees_within_classes(self):
        for cls in classify_epsilons().classes:
            values = {(r.order, r.aut_order, r.aut_c_order) for r in (out_c(family(1, e)) for e in cls)}
            assert len(values) == 1
