"""Finite-dimensional irreducible modules: certification, decompositions, flags.

A module is certified once by :func:`verify_module`; everything else in this
file takes a certified :class:`ModuleRep` of type 1 and re-derives the
eigenspace decompositions, the shape and the four flags from it.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .linalg import Decomposition, Flag, Subspace
from .reports import CertificationError, InputError, Report
from .tetra import GENERATORS, GenAssignment, GenIndex, apply_sign_flip, check_relations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuleRep:
    """A certified module: construct it with :func:`verify_module`."""

    assignment: GenAssignment
    epsilon: int
    d: int
    decompositions: Tuple[Decomposition, ...] = field(compare=False, repr=False)

    @property
    def q(self):
        return self.assignment.q

    @property
    def dim(self) -> int:
        return self.assignment.dim

    def __getitem__(self, key) -> DomainMatrix:
        return self.assignment[key]


def verify_module(A: GenAssignment) -> Tuple[bool, Union[ModuleRep, Report]]:
    rep = Report(subject="module")
    rep.extend(check_relations(A))
    if not rep.ok:
        return False, rep

    epsilon, D01 = None, None
    for eps in (1, -1):
        D01 = la.q_decomposition(A["x01"], A.q, eps)
        if D01 is not None:
            epsilon = eps
            break
    if epsilon is None:
        rep.fail("module.spectrum", "x01", note="not semisimple with eigenvalues +-q^(d-2i)")
        return False, rep
    d = D01.diameter

    decomps = []
    for g, M in A.items():
        D = la.q_decomposition(M, A.q, epsilon)
        if D is None or D.diameter != d:
            rep.fail("module.spectrum", g.name, note=f"spectrum differs from x01 (type {epsilon}, d={d})")
            continue
        decomps.append(D)
    if not rep.ok:
        return False, rep

    closure = la.algebra_closure_dim(list(A.matrices))
    if closure != A.dim ** 2:
        rep.fail("module.irreducible", note=f"generated algebra has dim {closure} < {A.dim ** 2}")
        return False, rep

    logger.debug("certified module dim=%d type=%d d=%d", A.dim, epsilon, d)
    return True, ModuleRep(A, epsilon, d, tuple(decomps))


def certify_module(A: GenAssignment) -> ModuleRep:
    ok, payload = verify_module(A)
    if not ok:
        raise CertificationError(payload)
    return payload


def module_summary(M: ModuleRep) -> Dict[str, object]:
    return {"type": M.epsilon, "diameter": M.d, "dim": M.dim}


def normalize_type(M: ModuleRep) -> ModuleRep:
    if M.epsilon == 1:
        return M
    return certify_module(apply_sign_flip(M.assignment))


def _require_type1(M: ModuleRep) -> None:
    if M.epsilon != 1:
        raise InputError("operation needs a type-1 module; call normalize_type first")


def decomposition_rs(M: ModuleRep, g) -> Decomposition:
    """Eigenspaces of x_rs for q^d, q^(d-2), ..., q^-d."""
    _require_type1(M)
    if isinstance(g, str):
        g = GenIndex.parse(g)
    elif not isinstance(g, GenIndex):
        g = GenIndex.of(*g)
    return M.decompositions[GENERATORS.index(g)]


def shape(M: ModuleRep) -> Tuple[int, ...]:
    _require_type1(M)
    rep = Report(subject="shape")
    first = M.decompositions[0].shape
    for g, D in zip(GENERATORS, M.decompositions):
        if D.shape != first:
            rep.fail("module.shape", f"x01 vs {g.name}", note=f"{first} != {D.shape}")
    if tuple(reversed(first)) != first:
        rep.fail("module.shape_symmetry", note=str(first))
    if not rep.ok:
        raise CertificationError(rep)
    return first


# ---------------------------------------------------------------------------
# flags


def _inducing(M: ModuleRep, n: int) -> List[Tuple[str, Decomposition]]:
    """The four decompositions that induce flag [n]: [n,s] and the inversion of [r,n]."""
    out = []
    for k in (1, 2):
        g = GenIndex.of(n, n + k)
        out.append((f"[{g.r},{g.s}]", decomposition_rs(M, g)))
    for k in (1, 2):
        g = GenIndex.of(n - k, n)
        out.append((f"[{g.r},{g.s}]^inv", decomposition_rs(M, g).inversion()))
    return out


def flag_of(M: ModuleRep, n: int) -> Flag:
    return la.induced_flag(decomposition_rs(M, (n, n + 1)))


def _flags_report(M: ModuleRep) -> Tuple[List[Flag], Report]:
    rep = Report(subject="flags")
    flags = []
    for n in range(4):
        induced = [(label, la.induced_flag(D)) for label, D in _inducing(M, n)]
        base = induced[0][1]
        for label, F in induced[1:]:
            if F != base:
                rep.fail("flags.induced", f"[{n}] from {label}")
        flags.append(base)
    for a in range(4):
        for b in range(4):
            if a != b and la.flags_opposite(flags[a], flags[b]) is None:
                rep.fail("flags.opposite", f"[{a}] vs [{b}]")
    return flags, rep


def four_flags(M: ModuleRep) -> List[Flag]:
    _require_type1(M)
    flags, rep = _flags_report(M)
    if not rep.ok:
        raise CertificationError(rep)
    return flags


def check_flag_intersection(M: ModuleRep, flags: Optional[Sequence[Flag]] = None) -> Report:
    """Component i of [r,s] must be ([r])_i intersected with ([s])_{d-i}."""
    _require_type1(M)
    if flags is None:
        flags, _ = _flags_report(M)
    rep = Report(subject="flag_intersection")
    d = M.d
    for g in GENERATORS:
        D = decomposition_rs(M, g)
        for i in range(d + 1):
            U = la.intersect(flags[g.r].components[i], flags[g.s].components[d - i])
            if U != D.component(i):
                rep.fail("flags.intersection", f"{g.name} i={i}")
    return rep


# ---------------------------------------------------------------------------
# action tables

# Each row: (decomposition [r+a, r+b], eigenvalue shift, target).
# Shift "+" subtracts q^(d-2i), "-" subtracts q^(2i-d), None subtracts nothing.
# Target is (lo, hi) relative to i, where None means the end of the range
# (0 for lo, d for hi); a target of None means the image must be zero.
ADJACENT_TABLE = (
    ((0, 1), "+", None),
    ((1, 2), "-", (-1, -1)),
    ((2, 3), None, (-1, 1)),
    ((3, 0), "-", (1, 1)),
    ((0, 2), "+", (-1, -1)),
    ((1, 3), "-", (-1, -1)),
)
OPPOSITE_TABLE = (
    ((0, 1), "+", (None, -1)),
    ((1, 2), "+", (1, None)),
    ((2, 3), "-", (-1, -1)),
    ((3, 0), "-", (1, 1)),
    ((0, 2), "+", None),
    ((1, 3), None, (-1, None)),
)


def _table_target(D: Decomposition, i: int, target) -> Subspace:
    if target is None:
        return Subspace.zero(D.ambient_dim, D.domain)
    lo, hi = target
    lo = 0 if lo is None else i + lo
    hi = D.diameter if hi is None else i + hi
    return D.span_range(lo, hi)


def verify_action_tables(M: ModuleRep) -> Report:
    _require_type1(M)
    rep = Report(subject="action_tables")
    q, d = M.q, M.d
    tables = (("adjacent", 1, ADJACENT_TABLE), ("opposite", 2, OPPOSITE_TABLE))
    for table_name, step, table in tables:
        for r in range(4):
            X = M[(r, r + step)]
            for (a, b), sign, target in table:
                D = decomposition_rs(M, (r + a, r + b))
                for i in range(d + 1):
                    if sign == "+":
                        Y = la.shifted(X, q.power(d - 2 * i))
                    elif sign == "-":
                        Y = la.shifted(X, q.power(2 * i - d))
                    else:
                        Y = X
                    if not la.maps_into(Y, D.component(i), _table_target(D, i, target)):
                        rep.fail(
                            f"tables.{table_name}",
                            f"x{r}{(r + step) % 4} on [{(r + a) % 4},{(r + b) % 4}] i={i}",
                        )
    return rep


def check_module(M: ModuleRep) -> Report:
    """Shape, inversion pairs, four flags, flag intersections and action tables."""
    _require_type1(M)
    rep = Report(subject="module_structure", details=module_summary(M))
    try:
        rep.details["shape"] = list(shape(M))
    except CertificationError as e:
        rep.extend(e.report)
    for r in range(4):
        fwd, back = decomposition_rs(M, (r, r + 2)), decomposition_rs(M, (r + 2, r))
        if fwd.inversion() != back:
            rep.fail("decomposition.inversion", f"[{r},{(r + 2) % 4}]")
    flags, flag_rep = _flags_report(M)
    rep.extend(flag_rep)
    rep.extend(check_flag_intersection(M, flags))
    rep.extend(verify_action_tables(M))
    return rep
