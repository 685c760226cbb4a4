"""q-tridiagonal and q-inverting pairs.

Both verifiers build the only possible witness decompositions (the ordered
eigenspaces for q^d, q^(d-2), ..., q^-d) and then test the containments and
irreducibility against them, returning ``(ok, pair)`` or ``(False, report)``.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .exactmath import QParam
from .linalg import Decomposition, Subspace
from .modrep import ModuleRep, _require_type1
from .reports import CertificationError, InputError, Report

logger = logging.getLogger(__name__)

# coefficient scan for invertible elements of a multi-dimensional solution space
ISO_MAX_COEFF = 3


@dataclass(frozen=True)
class QInvertingPair:
    q: QParam
    K: DomainMatrix
    Kstar: DomainMatrix
    V: Decomposition
    Vstar: Decomposition

    @property
    def d(self) -> int:
        return self.V.diameter

    @property
    def delta(self) -> int:
        return self.Vstar.diameter

    @property
    def dim(self) -> int:
        return self.K.shape[0]

    @property
    def operators(self) -> Tuple[DomainMatrix, DomainMatrix]:
        return self.K, self.Kstar

    def same_matrices(self, other: "QInvertingPair") -> bool:
        return la.matrices_equal(self.K, other.K) and la.matrices_equal(self.Kstar, other.Kstar)


@dataclass(frozen=True)
class QTridiagonalPair:
    q: QParam
    A: DomainMatrix
    Astar: DomainMatrix
    V: Decomposition
    Vstar: Decomposition

    @property
    def d(self) -> int:
        return self.V.diameter

    @property
    def delta(self) -> int:
        return self.Vstar.diameter

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def operators(self) -> Tuple[DomainMatrix, DomainMatrix]:
        return self.A, self.Astar


def _check_shapes(X: DomainMatrix, Y: DomainMatrix, q: QParam) -> None:
    if not (la.is_square(X) and la.is_square(Y)) or X.shape != Y.shape:
        raise InputError(f"pair matrices must be square of equal size, got {X.shape} and {Y.shape}")
    if X.domain != q.domain or Y.domain != q.domain:
        raise InputError("pair matrices are not over the domain of q")


def _containment(rep: Report, check: str, X: DomainMatrix, D: Decomposition, target) -> None:
    """Record a failure for each i with X D_i not inside target(i)."""
    for i in range(D.diameter + 1):
        if not la.maps_into(X, D.component(i), target(i)):
            rep.fail(check, f"i={i}")


def _witnesses(rep: Report, prefix: str, X: DomainMatrix, Y: DomainMatrix, q: QParam
               ) -> Tuple[Optional[Decomposition], Optional[Decomposition]]:
    V = la.q_decomposition(X, q, 1)
    if V is None:
        rep.fail(f"{prefix}.eigenvalues", "first", note="not semisimple with eigenvalues q^(d-2i)")
    Vstar = la.q_decomposition(Y, q, 1)
    if Vstar is None:
        rep.fail(f"{prefix}.eigenvalues", "second", note="not semisimple with eigenvalues q^(d-2i)")
    return V, Vstar


def _irreducible(rep: Report, prefix: str, X: DomainMatrix, Y: DomainMatrix) -> None:
    n = X.shape[0]
    closure = la.algebra_closure_dim([X, Y])
    rep.details["closure_dim"] = closure
    if closure != n * n:
        rep.fail(f"{prefix}.irreducible", note=f"generated algebra has dim {closure} < {n * n}")


def verify_qinverting(K: DomainMatrix, Kstar: DomainMatrix, q: QParam
                      ) -> Tuple[bool, Union[QInvertingPair, Report]]:
    _check_shapes(K, Kstar, q)
    rep = Report(subject="qinverting")
    for label, X in (("K", K), ("Kstar", Kstar)):
        if not la.is_invertible(X):
            rep.fail("qinverting.invertible", label)
    if not rep.ok:
        return False, rep

    V, Vstar = _witnesses(rep, "qinverting", K, Kstar, q)
    if not rep.ok:
        return False, rep
    rep.details.update({"d": V.diameter, "delta": Vstar.diameter})

    K_inv, Kstar_inv = K.inv(), Kstar.inv()
    _containment(rep, "qinverting.k2", Kstar, V, lambda i: V.prefix(i + 1))
    _containment(rep, "qinverting.k3", Kstar_inv, V, lambda i: V.suffix(i - 1))
    _containment(rep, "qinverting.ks2", K, Vstar, lambda i: Vstar.suffix(i - 1))
    _containment(rep, "qinverting.ks3", K_inv, Vstar, lambda i: Vstar.prefix(i + 1))
    if not rep.ok:
        return False, rep

    _irreducible(rep, "qinverting", K, Kstar)
    if rep.ok and V.diameter != Vstar.diameter:
        rep.fail("qinverting.diameter", note=f"d={V.diameter} delta={Vstar.diameter}")
    if not rep.ok:
        return False, rep
    return True, QInvertingPair(q, K, Kstar, V, Vstar)


def verify_qtridiagonal(A: DomainMatrix, Astar: DomainMatrix, q: QParam
                        ) -> Tuple[bool, Union[QTridiagonalPair, Report]]:
    _check_shapes(A, Astar, q)
    rep = Report(subject="qtridiagonal")
    V, Vstar = _witnesses(rep, "qtridiagonal", A, Astar, q)
    if not rep.ok:
        return False, rep
    rep.details.update({"d": V.diameter, "delta": Vstar.diameter})

    _containment(rep, "qtridiagonal.i", Astar, V, lambda i: V.span_range(i - 1, i + 1))
    _containment(rep, "qtridiagonal.ii", A, Vstar, lambda i: Vstar.span_range(i - 1, i + 1))
    if not rep.ok:
        return False, rep

    _irreducible(rep, "qtridiagonal", A, Astar)
    if rep.ok and V.diameter != Vstar.diameter:
        rep.fail("qtridiagonal.diameter", note=f"d={V.diameter} delta={Vstar.diameter}")
    if not rep.ok:
        return False, rep
    return True, QTridiagonalPair(q, A, Astar, V, Vstar)


def certify_qinverting(K: DomainMatrix, Kstar: DomainMatrix, q: QParam) -> QInvertingPair:
    ok, payload = verify_qinverting(K, Kstar, q)
    if not ok:
        raise CertificationError(payload)
    return payload


def certify_qtridiagonal(A: DomainMatrix, Astar: DomainMatrix, q: QParam) -> QTridiagonalPair:
    ok, payload = verify_qtridiagonal(A, Astar, q)
    if not ok:
        raise CertificationError(payload)
    return payload


def extract_qinverting(M: ModuleRep) -> QInvertingPair:
    """(x02, x13) on a type-1 module."""
    _require_type1(M)
    return certify_qinverting(M["x02"], M["x13"], M.q)


def extract_qtridiagonal(M: ModuleRep) -> QTridiagonalPair:
    """(x01, x23) on a type-1 module."""
    _require_type1(M)
    return certify_qtridiagonal(M["x01"], M["x23"], M.q)


# ---------------------------------------------------------------------------
# Z4 action


def rho_action(P: QInvertingPair) -> QInvertingPair:
    """(K, K*) -> (K*, K^-1)."""
    return certify_qinverting(P.Kstar, P.K.inv(), P.q)


def z4_orbit(P: QInvertingPair) -> List[QInvertingPair]:
    orbit = [P]
    for _ in range(3):
        orbit.append(rho_action(orbit[-1]))
    return orbit


def orbit_isomorphism_pattern(P: QInvertingPair) -> List[List[bool]]:
    orbit = z4_orbit(P)
    return [[pairs_isomorphic(a, b) is not None for b in orbit] for a in orbit]


# ---------------------------------------------------------------------------
# isomorphism


def intertwiners(ops: Sequence[DomainMatrix], ops2: Sequence[DomainMatrix]) -> List[DomainMatrix]:
    """Basis of {S : S X = X' S for every paired X, X'}."""
    n, K = ops[0].shape[0], ops[0].domain
    rows = []
    for X, Y in zip(ops, ops2):
        Xl, Yl = X.to_list(), Y.to_list()
        for a in range(n):
            for b in range(n):
                row = [K.zero] * (n * n)
                for c in range(n):
                    row[a * n + c] += Xl[c][b]
                    row[c * n + b] -= Yl[a][c]
                rows.append(row)
    null = la.kernel(DomainMatrix(rows, (len(rows), n * n), K))
    return [la.unflatten(v, n, K) for v in null.basis]


def pairs_isomorphic(P, P2) -> Optional[DomainMatrix]:
    """An invertible S with S X = X' S for both operators of the pairs, or None.

    Certified pairs act irreducibly, so their intertwiner space is at most a
    line. Small integer combinations of the basis are only scanned for
    uncertified inputs with a larger intertwiner space.
    """
    X, Y = P.operators
    X2, Y2 = P2.operators
    if X.shape != X2.shape or P.q != P2.q:
        return None
    basis = intertwiners((X, Y), (X2, Y2))
    logger.debug("intertwiner space has dim %d", len(basis))
    for S in basis:
        if la.is_invertible(S):
            return S
    if len(basis) < 2:
        return None
    K = X.domain
    for coeffs in itertools.product(range(-ISO_MAX_COEFF, ISO_MAX_COEFF + 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        S = la.zeros(X.shape[0], K)
        for c, B in zip(coeffs, basis):
            S = S + la.scale(B, K.convert(c))
        if la.is_invertible(S):
            return S
    return None


# ---------------------------------------------------------------------------
# generalized conditions on a pair of decompositions

CONDITIONS = ("i", "ii", "iii", "iv")


def _condition_targets(D: Decomposition, Dstar: Decomposition):
    # (acting decomposition, decomposition acted on, target)
    return {
        "i": (D, Dstar, lambda j: Dstar.prefix(j + 1)),
        "ii": (D, Dstar, lambda j: Dstar.suffix(j - 1)),
        "iii": (Dstar, D, lambda j: D.prefix(j + 1)),
        "iv": (Dstar, D, lambda j: D.suffix(j - 1)),
    }


def _coefficient_space(F: Sequence[DomainMatrix], on: Decomposition, target) -> Subspace:
    """Coefficient vectors c with (sum c_i F_i) on_j inside target(j) for every j."""
    K = on.domain
    m = len(F)
    rows = []
    for j in range(on.diameter + 1):
        annih = la.annihilator(target(j))
        for v in on.component(j).basis:
            images = [[sum((r[k] * v[k] for k in range(len(v))), K.zero) for r in Fi.to_list()]
                      for Fi in F]
            for y in annih.basis:
                rows.append([sum((y[k] * img[k] for k in range(len(y))), K.zero) for img in images])
    if not rows:
        return Subspace.full(m, K)
    return la.kernel(DomainMatrix(rows, (len(rows), m), K))


def _distinct(c: Sequence) -> bool:
    return len(set(c)) == len(c)


def _generator_witness(L: Subspace) -> Optional[List]:
    """A vector of L with pairwise distinct coordinates, if one exists."""
    m, K = L.ambient_dim, L.domain
    pairs = list(itertools.combinations(range(m), 2))
    if any(all(b[i] == b[j] for b in L.basis) for i, j in pairs):
        return None
    # sum t^l b_l has distinct coordinates for all but finitely many t
    for t in range(1, len(pairs) * max(L.dim, 1) + 2):
        c = [K.zero] * m
        for l, b in enumerate(L.basis):
            w = K.convert(t) ** l
            c = [x + w * y for x, y in zip(c, b)]
        if _distinct(c):
            return c
    return None


def _coefficients_in(F: Sequence[DomainMatrix], X: DomainMatrix) -> Optional[List]:
    """c with X = sum c_i F_i, or None if X is outside the algebra spanned by F."""
    K = X.domain
    flats = [la.flatten(Fi) for Fi in F]
    target = la.flatten(X)
    rows = [[f[k] for f in flats] for k in range(len(target))]
    sol = la.solve_affine(rows, list(target), len(F), K)
    return None if sol is None else sol[0]


def generalized_conditions_check(D: Decomposition, Dstar: Decomposition,
                                 operators: Optional[Sequence[DomainMatrix]] = None) -> Report:
    """Decide conditions (i)-(v) for the projection algebras of D and D*.

    With ``operators`` = (A+, A-, A*+, A*-) each operator is additionally
    checked to be a generator of its algebra satisfying its containment.
    """
    if D.ambient_dim != Dstar.ambient_dim:
        raise InputError("decompositions live in different spaces")
    K = D.domain
    F, Fstar = la.projections(D), la.projections(Dstar)
    rep = Report(subject="generalized_conditions")
    results: Dict[str, Dict[str, object]] = {}

    for name, (acting, on, target) in _condition_targets(D, Dstar).items():
        family = F if acting is D else Fstar
        witness = _generator_witness(_coefficient_space(family, on, target))
        entry: Dict[str, object] = {"pass": witness is not None}
        if witness is None:
            rep.fail(f"gen9.condition_{name}", note="no generator satisfies the containment")
        else:
            entry["witness"] = [str(K.to_sympy(x)) for x in witness]
        results[name] = entry

    closure = la.algebra_closure_dim(F + Fstar)
    n = D.ambient_dim
    results["v"] = {"pass": closure == n * n, "closure_dim": closure}
    if closure != n * n:
        rep.fail("gen9.condition_v", note=f"projections generate dim {closure} < {n * n}")

    if operators is not None:
        if len(operators) != 4:
            raise InputError("operators must be (A+, A-, A*+, A*-)")
        for name, X in zip(CONDITIONS, operators):
            acting, on, target = _condition_targets(D, Dstar)[name]
            family = F if acting is D else Fstar
            c = _coefficients_in(family, X)
            if c is None:
                rep.fail(f"gen9.operator_{name}", note="operator is not in the projection algebra")
            elif not _distinct(c):
                rep.fail(f"gen9.operator_{name}", note="operator does not generate the algebra")
            else:
                _containment(rep, f"gen9.operator_{name}", X, on, target)
    rep.details["conditions"] = results
    return rep


def tridiagonal_assignments(P: QTridiagonalPair) -> Tuple[DomainMatrix, ...]:
    return P.A, P.A, P.Astar, P.Astar


def inverting_assignments(P: QInvertingPair) -> Tuple[DomainMatrix, ...]:
    return P.K.inv(), P.K, P.Kstar, P.Kstar.inv()
