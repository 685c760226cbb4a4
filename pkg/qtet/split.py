"""Split decompositions and the module structure they determine.

From a certified q-inverting pair (K, K*) the split decomposition
U_i = (V_0 + ... + V_i) & (V*_0 + ... + V*_{d-i}) is computed, the split
operator acting as q^(d-2i) on U_i is built from it, and the four split
operators of the Z4 orbit together with K, K* and their inverses give back
the unique module on which x02, x13 act as K, K*.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .exactmath import QParam
from .linalg import Decomposition, Subspace
from .modrep import ModuleRep, verify_module
from .pairs import QInvertingPair, z4_orbit
from .reports import CertificationError, InputError, Report
from .tetra import GenAssignment

logger = logging.getLogger(__name__)


def v_ij(P: QInvertingPair, i: int, j: int) -> Subspace:
    """(V_0+...+V_i) & (V*_0+...+V*_j); 0 below the range and V above it."""
    return la.intersect(P.V.prefix(i), P.Vstar.prefix(j))


def _w(P: QInvertingPair, r: int) -> Subspace:
    return la.subspace_sum([v_ij(P, k, r - k) for k in range(r + 1)])


def check_vij_lemmas(P: QInvertingPair) -> Report:
    rep = Report(subject="vij", details={"d": P.d, "delta": P.delta})
    d, delta, q = P.d, P.delta, P.q
    if d != delta:
        rep.fail("vij.diameter", note=f"d={d} delta={delta}")

    for i in range(d + 1):
        if v_ij(P, i, delta) != P.V.prefix(i):
            rep.fail("vij.boundary", f"V_(i,delta) i={i}")
    for j in range(delta + 1):
        if v_ij(P, d, j) != P.Vstar.prefix(j):
            rep.fail("vij.boundary", f"V_(d,j) j={j}")

    K_inv = P.K.inv()
    for i in range(d + 1):
        for j in range(delta + 1):
            V = v_ij(P, i, j)
            if not la.maps_into(la.shifted(K_inv, q.power(2 * i - d)), V, v_ij(P, i - 1, j + 1)):
                rep.fail("vij.k_inverse", f"i={i} j={j}")
            if not la.maps_into(la.shifted(P.Kstar, q.power(delta - 2 * j)), V, v_ij(P, i + 1, j - 1)):
                rep.fail("vij.kstar", f"i={i} j={j}")
            if i + j < d and not V.is_zero:
                rep.fail("vij.vanishing", f"i={i} j={j}")

    for r in range(d + 1):
        W = _w(P, r)
        if r < d and not W.is_zero:
            rep.fail("vij.w_zero", f"r={r}", note=f"dim W_r = {W.dim}")
        if r == d and not W.is_full:
            rep.fail("vij.w_full", note=f"dim W_d = {W.dim}")
    return rep


def split_decomposition(P: QInvertingPair) -> Decomposition:
    U = Decomposition.attempt([v_ij(P, i, P.d - i) for i in range(P.d + 1)])
    if U is None:
        rep = Report(subject="split")
        rep.fail("split.decomposition", note="U_0..U_d is not a decomposition")
        raise CertificationError(rep)
    return U


def split_operator(P: QInvertingPair, U: Optional[Decomposition] = None) -> DomainMatrix:
    """The semisimple map acting on U_i as q^(d-2i)."""
    if U is None:
        U = split_decomposition(P)
    return la.operator_from_decomposition(U, [P.q.power(U.diameter - 2 * i) for i in range(U.diameter + 1)])


@dataclass(frozen=True)
class SplitData:
    pair: QInvertingPair
    U: Decomposition
    S: DomainMatrix


def split_data(P: QInvertingPair) -> SplitData:
    U = split_decomposition(P)
    return SplitData(P, U, split_operator(P, U))


def check_split_lemmas(data: SplitData) -> Report:
    P, U, S = data.pair, data.U, data.S
    q, d = P.q, P.d
    zero = Subspace.zero(P.dim, q.domain)
    rep = Report(subject="split", details={"shape": list(U.shape)})
    if not la.is_semisimple_with(S, [q.power(d - 2 * i) for i in range(d + 1)]):
        rep.fail("split.semisimple", note="eigenvalues are not q^(d-2i)")
    K_inv = P.K.inv()
    for i in range(d + 1):
        Ui = U.component(i)
        if Ui != v_ij(P, i, d - i):
            rep.fail("split.component", f"i={i}")
        if not la.maps_into(la.shifted(S, q.power(d - 2 * i)), Ui, zero):
            rep.fail("split.operator", f"i={i}")
        if not la.maps_into(la.shifted(K_inv, q.power(2 * i - d)), Ui, U.component(i - 1)):
            rep.fail("split.k_inverse", f"i={i}")
        if not la.maps_into(la.shifted(P.Kstar, q.power(2 * i - d)), Ui, U.component(i + 1)):
            rep.fail("split.kstar", f"i={i}")
        if U.span_range(0, i) != P.V.prefix(i):
            rep.fail("split.prefix", f"i={i}")
        if U.span_range(d - i, d) != P.Vstar.prefix(i):
            rep.fail("split.suffix", f"i={i}")
    return rep


# ---------------------------------------------------------------------------
# reconstruction


def reconstruct_module(P: QInvertingPair) -> ModuleRep:
    """The unique type-1 module with x02 = K and x13 = K*."""
    orbit = z4_orbit(P)
    splits = [split_operator(member) for member in orbit]
    mats = {
        "x01": splits[0],
        "x12": splits[1],
        "x23": splits[2],
        "x30": splits[3],
        "x02": P.K,
        "x13": P.Kstar,
        "x20": orbit[2].K,
        "x31": orbit[3].K,
    }
    A = GenAssignment.from_mapping(P.q, mats)
    ok, payload = verify_module(A)
    if not ok:
        raise CertificationError(payload)
    if payload.epsilon != 1 or payload.d != P.d:
        rep = Report(subject="reconstruct")
        rep.fail("reconstruct.profile", note=f"type {payload.epsilon}, d={payload.d}, expected type 1, d={P.d}")
        raise CertificationError(rep)
    logger.debug("reconstructed module of dim %d, d=%d", P.dim, P.d)
    return payload


def check_reconstruction_steps(P: QInvertingPair, M: ModuleRep) -> Report:
    """Intermediate containments used when x12 and x23 are shown to satisfy the relations."""
    rep = Report(subject="reconstruction_steps")
    q, d = P.q, P.d
    U = split_decomposition(P)
    X12, X23 = M["x12"], M["x23"]
    V, Vstar = P.V, P.Vstar
    for i in range(d + 1):
        Ui = U.component(i)
        lower = la.shifted(X12, q.power(2 * i - d))
        checks = (
            ("steps.x12_on_vstar", la.shifted(X12, q.power(d - 2 * i)), Vstar.component(i),
             Vstar.component(i - 1)),
            ("steps.x12_on_v", la.shifted(X12, q.power(d - 2 * i)), V.component(i), V.component(i + 1)),
            ("steps.x12_tail", lower, Ui, U.span_range(i + 1, d)),
            ("steps.x12_head", lower, Ui, U.span_range(0, i + 1)),
            ("steps.x12_raise", lower, Ui, U.component(i + 1)),
            ("steps.x23_on_v", la.shifted(X23, q.power(2 * i - d)), V.component(i), V.component(i + 1)),
            ("steps.x23_on_vstar", la.shifted(X23, q.power(d - 2 * i)), Vstar.component(i),
             Vstar.component(i + 1)),
            ("steps.x23_head", X23, Ui, U.span_range(0, i + 1)),
            ("steps.x23_tail", X23, Ui, U.span_range(i - 1, d)),
            ("steps.x23_tridiagonal", X23, Ui, U.span_range(i - 1, i + 1)),
        )
        for name, X, S, T in checks:
            if not la.maps_into(X, S, T):
                rep.fail(name, f"i={i}")
    return rep


# ---------------------------------------------------------------------------
# eigenspace equivalences for a pair of operators


def lemma_key_predicates(A: DomainMatrix, B: DomainMatrix, theta, q: QParam) -> Dict[str, Tuple[bool, bool]]:
    """Both sides of the three eigenspace equivalences at eigenvalue theta.

    ``cubic``: the q-Serre expression in A, B vanishes on V_A(theta) versus
    B V_A(theta) inside V_A(q^2 theta) + V_A(theta) + V_A(q^-2 theta).
    ``qweyl_left``: q AB - q^-1 BA - (q - q^-1) I vanishes on V_A(theta) versus
    (B - theta^-1) V_A(theta) inside V_A(q^-2 theta).
    ``qweyl_right``: the same expression vanishes on V_B(theta) versus
    (A - theta^-1) V_B(theta) inside V_B(q^2 theta).
    """
    if q.is_zero(theta):
        raise InputError("theta must be nonzero")
    if A.shape != B.shape or not la.is_square(A):
        raise InputError("A and B must be square of equal size")
    n, K = A.shape[0], A.domain
    zero = Subspace.zero(n, K)
    q2, qm2 = q.power(2), q.power(-2)
    theta_inv = q.one / theta

    b3 = q.bracket(3)
    A2 = A * A
    serre = A2 * A * B - la.scale(A2 * B * A, b3) + la.scale(A * B * A2, b3) - B * A2 * A
    weyl = la.scale(A * B, q.value) - la.scale(B * A, q.power(-1))
    weyl = weyl - la.scale(la.identity(n, K), q.value - q.power(-1))

    VA = la.eigenspace(A, theta)
    VB = la.eigenspace(B, theta)
    nearby = la.subspace_sum([la.eigenspace(A, q2 * theta), VA, la.eigenspace(A, qm2 * theta)])
    return {
        "cubic": (la.maps_into(serre, VA, zero), la.maps_into(B, VA, nearby)),
        "qweyl_left": (
            la.maps_into(weyl, VA, zero),
            la.maps_into(la.shifted(B, theta_inv), VA, la.eigenspace(A, qm2 * theta)),
        ),
        "qweyl_right": (
            la.maps_into(weyl, VB, zero),
            la.maps_into(la.shifted(A, theta_inv), VB, la.eigenspace(B, q2 * theta)),
        ),
    }
