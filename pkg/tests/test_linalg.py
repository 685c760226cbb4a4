import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ

from qtet import linalg as la
from qtet.gen import random_unimodular
from qtet.linalg import Decomposition, Subspace
from qtet.reports import InputError


def mat(rows):
    return la.matrix(rows, QQ)


def span(vectors, n):
    return Subspace.span(vectors, n, QQ)


def e(i, n):
    return [1 if k == i else 0 for k in range(n)]


def lines(n):
    return Decomposition(tuple(span([e(i, n)], n) for i in range(n)))


def test_kernel_examples():
    assert la.kernel(la.identity(3, QQ)).is_zero
    assert la.kernel(la.zeros(2, QQ)).is_full
    assert la.kernel(mat([[1, 1], [1, 1]])) == span([[1, -1]], 2)


def test_eigenspace_examples(q2):
    D = la.diag([q2.power(1), q2.power(-1)], QQ)
    assert la.eigenspace(D, q2.value) == span([e(0, 2)], 2)
    assert la.eigenspace(la.identity(2, QQ), QQ(1)).is_full
    assert la.eigenspace(la.identity(2, QQ), QQ(2)).is_zero


def test_intersect_examples():
    S = span([e(0, 3), e(1, 3)], 3)
    T = span([e(1, 3), e(2, 3)], 3)
    assert la.intersect(S, T) == span([e(1, 3)], 3)
    assert la.intersect(S, Subspace.full(3, QQ)) == S
    assert la.intersect(S, Subspace.zero(3, QQ)).is_zero


def test_intersect_ambient_mismatch():
    with pytest.raises(InputError):
        la.intersect(Subspace.full(2, QQ), Subspace.full(3, QQ))


def test_sum_examples():
    S = span([e(0, 3)], 3)
    assert la.subspace_sum([S, Subspace.zero(3, QQ)]) == S
    assert la.subspace_sum([S, Subspace.full(3, QQ)]).is_full
    assert la.subspace_sum([S, span([e(1, 3), e(2, 3)], 3)]).is_full


def test_is_decomposition_examples():
    assert la.is_decomposition([span([e(0, 2)], 2), span([e(1, 2)], 2)])
    assert not la.is_decomposition([span([e(0, 2)], 2), span([e(0, 2)], 2)])
    assert la.is_decomposition([span([[1, 1]], 2), span([e(1, 2)], 2)])


def test_decomposition_rejects_overlap():
    with pytest.raises(InputError):
        Decomposition((span([e(0, 2)], 2), span([e(0, 2)], 2)))


def test_prefix_suffix_conventions():
    D = lines(3)
    assert D.prefix(-1).is_zero
    assert D.prefix(2).is_full and D.prefix(7).is_full
    assert D.suffix(0).is_full and D.suffix(-3).is_full
    assert D.suffix(3).is_zero
    assert D.component(5).is_zero
    assert D.suffix(1) == span([e(1, 3), e(2, 3)], 3)


def test_induced_flag_examples():
    single = Decomposition((Subspace.full(2, QQ),))
    assert la.induced_flag(single).components == (Subspace.full(2, QQ),)
    F = la.induced_flag(lines(3))
    assert F.components[0] == span([e(0, 3)], 3)
    assert F.components[1] == span([e(0, 3), e(1, 3)], 3)
    assert F.shape == (1, 1, 1)
    G = la.induced_flag(lines(3).inversion())
    assert G.components[0] == span([e(2, 3)], 3)


def test_flags_opposite_coordinate():
    D = lines(3)
    F, G = la.induced_flag(D), la.induced_flag(D.inversion())
    assert la.flags_opposite(F, G) == D
    assert la.flags_opposite(G, F) == D.inversion()
    assert la.flags_opposite(F, F) is None


def test_flags_opposite_recovers_skew_decomposition():
    D = Decomposition((span([[1, 1, 0]], 3), span([[0, 1, 2]], 3), span([[1, 0, 1]], 3)))
    F, G = la.induced_flag(D), la.induced_flag(D.inversion())
    assert la.flags_opposite(F, G) == D
    assert la.flags_opposite(G, F) == D.inversion()


def test_algebra_closure_examples():
    assert la.algebra_closure_dim([la.identity(2, QQ)]) == 1
    # both upper triangular: they fix span{e0}
    assert la.algebra_closure_dim([mat([[1, 0], [0, 2]]), mat([[0, 1], [0, 0]])]) == 3
    assert la.algebra_closure_dim([mat([[1, 0], [0, 2]]), mat([[0, 1], [1, 0]])]) == 4
    assert la.algebra_closure_dim([mat([[1, 0], [0, 2]])]) == 2


def test_algebra_closure_conjugation_invariant():
    rng = random.Random(7)
    gens = [mat([[1, 0, 0], [0, 2, 0], [0, 0, 4]]), mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])]
    base = la.algebra_closure_dim(gens)
    for _ in range(5):
        T = random_unimodular(3, rng, QQ)
        T_inv = la.inverse(T)
        assert la.algebra_closure_dim([T * X * T_inv for X in gens]) == base


def test_projections_resolve_identity():
    D = Decomposition((span([[1, 1, 0]], 3), span([[0, 1, 2], [1, 0, 1]], 3)))
    F = la.projections(D)
    total = F[0] + F[1]
    assert la.matrices_equal(total, la.identity(3, QQ))
    for i, Fi in enumerate(F):
        for j, Fj in enumerate(F):
            expected = Fi if i == j else la.zeros(3, QQ)
            assert la.matrices_equal(Fi * Fj, expected)


def test_operator_from_coordinate_decomposition(q2):
    scalars = [q2.power(2 - 2 * i) for i in range(3)]
    S = la.operator_from_decomposition(lines(3), scalars)
    assert la.matrices_equal(S, la.diag(scalars, QQ))


def test_solve_affine():
    particular, null = la.solve_affine([[1, 1, 0], [0, 0, 1]], [QQ(2), QQ(3)], 3, QQ)
    assert particular == [QQ(2), QQ(0), QQ(3)]
    assert null == [[QQ(-1), QQ(1), QQ(0)]]
    assert la.solve_affine([[1, 1], [1, 1]], [QQ(1), QQ(2)], 2, QQ) is None


def test_q_decomposition(q2):
    D = la.q_decomposition(la.diag([q2.power(-2), q2.power(2), QQ(1)], QQ), q2)
    assert D.shape == (1, 1, 1)
    assert D.component(0) == span([e(1, 3)], 3)
    assert la.q_decomposition(la.diag([q2.power(2), q2.power(-2)], QQ), q2) is None
    assert la.q_decomposition(mat([[2, 1], [0, 2]]), q2) is None


vectors = st.lists(st.integers(-3, 3), min_size=4, max_size=4)
spanning_sets = st.lists(vectors, min_size=0, max_size=4)


@settings(max_examples=200, deadline=None)
@given(spanning_sets, st.randoms())
def test_canonical_basis_ignores_order(vs, rnd):
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    combos = shuffled + [[a + b for a, b in zip(shuffled[0], shuffled[-1])]] if shuffled else shuffled
    assert span(vs, 4).basis == span(combos, 4).basis


@settings(max_examples=200, deadline=None)
@given(spanning_sets, spanning_sets)
def test_dimension_formula(vs, ws):
    S, T = span(vs, 4), span(ws, 4)
    assert S.dim + T.dim == la.subspace_sum([S, T]).dim + la.intersect(S, T).dim


def test_is_semisimple_with():
    assert la.is_semisimple_with(mat([[1, 0], [0, 2]]), [1, 2])
    assert not la.is_semisimple_with(mat([[1, 0], [0, 2]]), [1])
    assert not la.is_semisimple_with(mat([[1, 0], [0, 1]]), [1, 2])
    assert not la.is_semisimple_with(mat([[1, 1], [0, 1]]), [1])
