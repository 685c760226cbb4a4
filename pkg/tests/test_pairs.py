import random

import pytest
from sympy import QQ

from qtet import linalg as la
from qtet.gen import random_unimodular
from qtet.linalg import Decomposition, Subspace
from qtet.pairs import (
    QInvertingPair,
    certify_qinverting,
    generalized_conditions_check,
    intertwiners,
    inverting_assignments,
    orbit_isomorphism_pattern,
    pairs_isomorphic,
    rho_action,
    tridiagonal_assignments,
    verify_qinverting,
    verify_qtridiagonal,
    z4_orbit,
)
from qtet.reports import CertificationError, InputError


def block_sum(X, Y):
    n, m, K = X.shape[0], Y.shape[0], X.domain
    rows = [list(r) + [K.zero] * m for r in X.to_list()]
    rows += [[K.zero] * n + list(r) for r in Y.to_list()]
    return la.matrix(rows, K)


def conjugated(P, T):
    T_inv = la.inverse(T)
    return certify_qinverting(T * P.K * T_inv, T * P.Kstar * T_inv, P.q)


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_extracted_pairs_certify(inverting_pairs, tridiagonal_pairs, d):
    P, T = inverting_pairs[d], tridiagonal_pairs[d]
    assert (P.d, P.delta, P.dim) == (d, d, d + 1)
    assert (T.d, T.delta, T.dim) == (d, d, d + 1)


def test_verify_returns_pair(inverting_pairs):
    P = inverting_pairs[2]
    ok, payload = verify_qinverting(P.K, P.Kstar, P.q)
    assert ok and payload.same_matrices(P)


def test_singular_k_rejected(q2, modules):
    K = modules[1]["x02"]
    rows = K.to_list()
    det = K.det()
    rows[0][0] = rows[0][0] - det / rows[1][1]
    singular = la.matrix(rows, QQ)
    ok, rep = verify_qinverting(singular, modules[1]["x13"], q2)
    assert not ok
    assert rep.first.check == "qinverting.invertible"
    assert rep.first.location == "K"


def test_non_q_spectrum_rejected(q2, inverting_pairs):
    P = inverting_pairs[1]
    ok, rep = verify_qinverting(la.scale(P.K, QQ(3)), P.Kstar, q2)
    assert not ok
    assert rep.checks() == ["qinverting.eigenvalues"]


def test_reducible_pair_rejected(q2, inverting_pairs):
    P = inverting_pairs[1]
    ok, rep = verify_qinverting(block_sum(P.K, P.K), block_sum(P.Kstar, P.Kstar), q2)
    assert not ok
    assert rep.checks() == ["qinverting.irreducible"]
    assert rep.details["closure_dim"] == 4


def test_reducible_tridiagonal_rejected(q2, tridiagonal_pairs):
    P = tridiagonal_pairs[1]
    ok, rep = verify_qtridiagonal(block_sum(P.A, P.A), block_sum(P.Astar, P.Astar), q2)
    assert not ok
    assert rep.checks() == ["qtridiagonal.irreducible"]


def test_swapped_pair_fails_containment(q2, inverting_pairs):
    P = inverting_pairs[2]
    ok, rep = verify_qinverting(P.K, P.K.inv(), q2)
    assert not ok
    assert all(c.startswith("qinverting.") for c in rep.checks())


def test_mismatched_shapes(q2, inverting_pairs):
    with pytest.raises(InputError):
        verify_qinverting(inverting_pairs[1].K, inverting_pairs[2].Kstar, q2)


def test_certify_raises_with_report(q2, inverting_pairs):
    P = inverting_pairs[1]
    with pytest.raises(CertificationError) as exc:
        certify_qinverting(la.scale(P.K, QQ(3)), P.Kstar, q2)
    assert exc.value.report.first.check == "qinverting.eigenvalues"


@pytest.mark.parametrize("d", [1, 2, 3])
def test_z4_orbit(inverting_pairs, d):
    P = inverting_pairs[d]
    orbit = z4_orbit(P)
    assert len(orbit) == 4
    assert all(member.d == d for member in orbit)
    assert rho_action(orbit[3]).same_matrices(P)
    assert la.matrices_equal(orbit[1].K, P.Kstar)


def test_orbit_pattern_diagonal(inverting_pairs):
    pattern = orbit_isomorphism_pattern(inverting_pairs[2])
    assert [pattern[i][i] for i in range(4)] == [True] * 4
    for i in range(4):
        for j in range(4):
            assert pattern[i][j] == pattern[j][i]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_conjugate_pairs_are_isomorphic(inverting_pairs, d):
    P = inverting_pairs[d]
    T = random_unimodular(d + 1, random.Random(d), P.q.domain)
    P2 = conjugated(P, T)
    S = pairs_isomorphic(P, P2)
    assert S is not None
    assert la.matrices_equal(S * P.K, P2.K * S)
    assert la.matrices_equal(S * P.Kstar, P2.Kstar * S)


def test_intertwiners_of_irreducible_pair_are_scalars(inverting_pairs):
    P = inverting_pairs[2]
    basis = intertwiners(P.operators, P.operators)
    assert len(basis) == 1


def test_different_sizes_not_isomorphic(inverting_pairs):
    assert pairs_isomorphic(inverting_pairs[1], inverting_pairs[2]) is None


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_pairs_satisfy_generalized_conditions(inverting_pairs, tridiagonal_pairs, d):
    P = inverting_pairs[d]
    rep = generalized_conditions_check(P.V, P.Vstar, inverting_assignments(P))
    assert rep.ok, rep.checks()
    assert all(entry["pass"] for entry in rep.details["conditions"].values())
    T = tridiagonal_pairs[d]
    assert generalized_conditions_check(T.V, T.Vstar, tridiagonal_assignments(T)).ok


def test_equal_coordinate_decompositions_fail_only_closure():
    n = 3
    D = Decomposition(tuple(Subspace.span([[1 if k == i else 0 for k in range(n)]], n, QQ) for i in range(n)))
    rep = generalized_conditions_check(D, D)
    assert rep.checks() == ["gen9.condition_v"]
    assert rep.details["conditions"]["v"]["closure_dim"] == 3



def test_small_pair_examples(q2):
    one = la.identity(1, QQ)
    ok, P = verify_qinverting(one, one, q2)
    assert ok and P.d == 0
    D = la.diag([q2.power(1), q2.power(-1)], QQ)
    ok, rep = verify_qinverting(D, D, q2)
    assert not ok and rep.checks() == ["qinverting.irreducible"]
    ok, rep = verify_qtridiagonal(D, D, q2)
    assert not ok and rep.checks() == ["qtridiagonal.irreducible"]
    Astar = la.matrix([[q2.power(1) + q2.power(-1), 1], [-1, 0]], QQ)
    ok, T = verify_qtridiagonal(D, Astar, q2)
    assert ok and T.d == 1


def test_fixture_pairs_act_irreducibly(inverting_pairs, tridiagonal_pairs):
    for pairs in (inverting_pairs, tridiagonal_pairs):
        for P in pairs.values():
            assert la.algebra_closure_dim(list(P.operators)) == P.dim ** 2


def proportional(S, T):
    """True iff S = c*T for a nonzero scalar c."""
    K = T.domain
    i, j = next((i, j) for i, row in enumerate(T.to_list()) for j, x in enumerate(row) if not K.is_zero(x))
    c = S.to_list()[i][j] / T.to_list()[i][j]
    return not K.is_zero(c) and la.matrices_equal(S, la.scale(T, c))


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_many_conjugations_are_isomorphic(inverting_pairs, d):
    P = inverting_pairs[d]
    rng = random.Random(2024 + d)
    for _ in range(20):
        T = random_unimodular(P.dim, rng, P.q.domain)
        S = pairs_isomorphic(P, conjugated(P, T))
        assert S is not None
        assert proportional(S, T)


def test_isomorphism_scans_combinations_of_singular_intertwiners(q2):
    # reducible, so the intertwiner space is all diagonal matrices
    D = la.diag([q2.power(1), q2.power(-1)], QQ)
    V = la.q_decomposition(D, q2)
    P = QInvertingPair(q2, D, D, V, V)
    basis = intertwiners(P.operators, P.operators)
    assert len(basis) == 2
    assert not any(la.is_invertible(B) for B in basis)
    S = pairs_isomorphic(P, P)
    assert S is not None and la.is_invertible(S)
    assert la.matrices_equal(S * D, D * S)
