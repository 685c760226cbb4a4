"""Example modules: trivial ones, small evaluation-type ones, conjugates, corruptions.

The evaluation-type modules are found by solving the q-Weyl relations one
generator at a time in a basis where x01 is diagonal, with every unknown
matrix restricted to the band its action table allows.
"""
import logging
import os
import random
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .exactmath import QParam
from .fixtures_index import render_index
from .modrep import ModuleRep, certify_module, verify_module
from .reports import CertificationError, InputError, Report
from .tetra import GenAssignment, apply_rho
from .utils_io import module_to_json, write_json, write_manifest

logger = logging.getLogger(__name__)

# env/config
MAX_ANSATZ_TRIES = int(os.getenv("QTET_MAX_ANSATZ_TRIES", "12"))
MAX_EVALUATION_D = 4

Constraint = Tuple[Callable[[DomainMatrix], DomainMatrix], DomainMatrix]


def trivial_module(epsilon: int = 1, q: Optional[QParam] = None) -> ModuleRep:
    if epsilon not in (1, -1):
        raise InputError(f"type must be 1 or -1, got {epsilon}")
    q = q or QParam.from_env()
    return certify_module(GenAssignment.constant(q, 1, epsilon))


# ---------------------------------------------------------------------------
# band-restricted linear solve


def _lower_bidiagonal(n: int) -> List[Tuple[int, int]]:
    return [(i, i) for i in range(n)] + [(i + 1, i) for i in range(n - 1)]


def _upper_bidiagonal(n: int) -> List[Tuple[int, int]]:
    return [(i, i) for i in range(n)] + [(i, i + 1) for i in range(n - 1)]


def _tridiagonal(n: int) -> List[Tuple[int, int]]:
    return _lower_bidiagonal(n) + [(i, i + 1) for i in range(n - 1)]


def _unit(n: int, pos: Tuple[int, int], K) -> DomainMatrix:
    rows = [[K.zero] * n for _ in range(n)]
    rows[pos[0]][pos[1]] = K.one
    return la.matrix(rows, K)


def _solve_banded(q: QParam, n: int, positions: Sequence[Tuple[int, int]],
                  constraints: Sequence[Constraint]):
    """Matrices X supported on ``positions`` with L(X) = R for every (L, R).

    Returns (particular, null) as matrices, or None when inconsistent.
    """
    K = q.domain
    images = [[L(_unit(n, p, K)).to_list() for p in positions] for L, _ in constraints]
    rows, rhs = [], []
    for (_, R), imgs in zip(constraints, images):
        Rl = R.to_list()
        for a in range(n):
            for b in range(n):
                rows.append([img[a][b] for img in imgs])
                rhs.append(Rl[a][b])
    sol = la.solve_affine(rows, rhs, len(positions), K)
    if sol is None:
        return None

    def build(vec) -> DomainMatrix:
        out = [[K.zero] * n for _ in range(n)]
        for (a, b), x in zip(positions, vec):
            out[a][b] = x
        return la.matrix(out, K)

    particular, null = sol
    return build(particular), [build(v) for v in null]


def _gauge(solution, t, K) -> DomainMatrix:
    particular, null = solution
    out = particular
    for N in null:
        out = out + la.scale(N, K.convert(t))
    return out


def _weyl_first(q: QParam, B: DomainMatrix) -> Callable[[DomainMatrix], DomainMatrix]:
    """E -> q E B - q^-1 B E (unknown is the first factor)."""
    return lambda E: la.scale(E * B, q.value) - la.scale(B * E, q.power(-1))


def _weyl_second(q: QParam, A: DomainMatrix) -> Callable[[DomainMatrix], DomainMatrix]:
    """E -> q A E - q^-1 E A (unknown is the second factor)."""
    return lambda E: la.scale(A * E, q.value) - la.scale(E * A, q.power(-1))


def _serre_second(q: QParam, X: DomainMatrix) -> Callable[[DomainMatrix], DomainMatrix]:
    b3 = q.bracket(3)
    X2 = X * X
    return lambda E: X2 * X * E - la.scale(X2 * E * X, b3) + la.scale(X * E * X2, b3) - E * X2 * X


def _ansatz(q: QParam, d: int, t: int) -> Optional[GenAssignment]:
    """Candidate assignment with x01 diagonal and gauge value t, or None."""
    n, K = d + 1, q.domain
    I = la.identity(n, K)
    weyl_rhs = la.scale(I, q.value - q.power(-1))
    zero = la.zeros(n, K)

    X01 = la.diag([q.power(d - 2 * i) for i in range(n)], K)
    X20 = la.matrix(
        [[q.power(2 * i - d) if j == i else (K.one if j == i + 1 else K.zero) for j in range(n)]
         for i in range(n)],
        K,
    )
    X02 = X20.inv()

    steps = []

    def solve(label, positions, constraints):
        sol = _solve_banded(q, n, positions, constraints)
        if sol is None:
            logger.debug("ansatz d=%d t=%d: %s inconsistent", d, t, label)
            return None
        steps.append((label, len(sol[1])))
        return _gauge(sol, t, K)

    X12 = solve("x12", _lower_bidiagonal(n), [
        (_weyl_second(q, X01), weyl_rhs),   # q x01 x12 - q^-1 x12 x01
        (_weyl_first(q, X20), weyl_rhs),    # q x12 x20 - q^-1 x20 x12
    ])
    if X12 is None:
        return None
    X30 = solve("x30", _upper_bidiagonal(n), [
        (_weyl_first(q, X01), weyl_rhs),
        (_weyl_first(q, X02), weyl_rhs),
    ])
    if X30 is None:
        return None
    X13 = solve("x13", _lower_bidiagonal(n), [
        (_weyl_second(q, X01), weyl_rhs),
        (_weyl_first(q, X30), weyl_rhs),
    ])
    if X13 is None or not la.is_invertible(X13):
        return None
    X31 = X13.inv()
    X23 = solve("x23", _tridiagonal(n), [
        (_weyl_second(q, X12), weyl_rhs),
        (_weyl_first(q, X30), weyl_rhs),
        (_weyl_first(q, X31), weyl_rhs),
        (_weyl_second(q, X02), weyl_rhs),
        (_serre_second(q, X01), zero),
    ])
    if X23 is None:
        return None
    logger.debug("ansatz d=%d t=%d free dims %s", d, t, steps)
    return GenAssignment.from_mapping(q, {
        "x01": X01, "x12": X12, "x23": X23, "x30": X30,
        "x02": X02, "x13": X13, "x20": X20, "x31": X31,
    })


def evaluation_module(d: int, q: Optional[QParam] = None) -> ModuleRep:
    """Type-1 module of diameter d and dimension d+1 with x12 = diag(q^(d-2i))."""
    if not 1 <= d <= MAX_EVALUATION_D:
        raise InputError(f"evaluation modules are generated for 1 <= d <= {MAX_EVALUATION_D}, got {d}")
    q = q or QParam.from_env()
    last: Optional[Report] = None
    for t in range(1, MAX_ANSATZ_TRIES + 1):
        A = _ansatz(q, d, t)
        if A is None:
            continue
        ok, payload = verify_module(apply_rho(A))
        if ok:
            logger.info("evaluation module d=%d found at gauge t=%d", d, t)
            return payload
        last = payload
        logger.debug("ansatz d=%d t=%d rejected: %s", d, t, payload.checks()[:3])
    rep = Report(subject="ansatz", details={"d": d, "tries": MAX_ANSATZ_TRIES})
    rep.fail("gen.ansatz", note="no gauge value produced a certified module")
    if last is not None:
        rep.extend(last)
    raise CertificationError(rep)


# ---------------------------------------------------------------------------
# transforms


def conjugate(M: ModuleRep, T: DomainMatrix) -> ModuleRep:
    """X -> T X T^-1 on every generator."""
    if T.shape != (M.dim, M.dim):
        raise InputError(f"T must be {M.dim}x{M.dim}")
    T_inv = la.inverse(T)
    return certify_module(M.assignment.map(lambda _, X: T * X * T_inv))


def corrupt(M: Union[ModuleRep, GenAssignment], name: str, location: Tuple[int, int], delta) -> GenAssignment:
    """Add ``delta`` to one entry of one generator."""
    A = M.assignment if isinstance(M, ModuleRep) else M
    a, b = location
    if not (0 <= a < A.dim and 0 <= b < A.dim):
        raise InputError(f"entry {location} outside a {A.dim}x{A.dim} matrix")
    rows = A[name].to_list()
    rows[a][b] = rows[a][b] + A.q.convert(delta)
    return A.replace(name, la.matrix(rows, A.q.domain))


def random_unimodular(n: int, rng: random.Random, K, steps: Optional[int] = None) -> DomainMatrix:
    """Product of integer elementary matrices I + c E_ij (det 1)."""
    T = la.identity(n, K)
    if n == 1:
        return T
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows = la.identity(n, K).to_list()
        rows[i][j] = K.convert(c)
        T = T * la.matrix(rows, K)
    return T


# ---------------------------------------------------------------------------
# fixtures


def fixture_name(d: int, q: QParam) -> str:
    tag = "qsym" if q.symbolic else "q" + q.text.replace("-", "m").replace("/", "_")
    return f"module_d{d}_{tag}.json"


def example_module(d: int, q: Optional[QParam] = None) -> ModuleRep:
    q = q or QParam.from_env()
    return trivial_module(1, q) if d == 0 else evaluation_module(d, q)


def write_fixtures(modules: Iterable[ModuleRep], out_dir: Union[str, Path]) -> List[Path]:
    """Module files plus manifest.json and index.html."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for M in modules:
        path = out / fixture_name(M.d, M.q)
        write_json(path, module_to_json(M.assignment))
        paths.append(path)
    write_manifest(out, paths)
    render_index(out, paths)
    return paths
