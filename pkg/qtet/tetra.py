"""Generators and defining relations of the q-tetrahedron algebra.

A generator x_rs is indexed by r, s in Z4 with s - r in {1, 2}. A
``GenAssignment`` attaches one square matrix to each of the eight generators;
the residual functions return matrices that vanish exactly when the
corresponding relation holds.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Tuple

from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .exactmath import QParam
from .reports import InputError, Report

logger = logging.getLogger(__name__)


class GenIndex(NamedTuple):
    r: int
    s: int

    @property
    def name(self) -> str:
        return f"x{self.r}{self.s}"

    @property
    def step(self) -> int:
        return (self.s - self.r) % 4

    def shifted(self, k: int = 1) -> "GenIndex":
        return GenIndex((self.r + k) % 4, (self.s + k) % 4)

    @classmethod
    def of(cls, r: int, s: int) -> "GenIndex":
        g = cls(r % 4, s % 4)
        if g.step not in (1, 2):
            raise InputError(f"x{r}{s} is not a generator (need s - r = 1 or 2 mod 4)")
        return g

    @classmethod
    def parse(cls, name: str) -> "GenIndex":
        if len(name) != 3 or name[0] != "x" or not name[1:].isdigit():
            raise InputError(f"unknown generator name: {name!r}")
        g = cls.of(int(name[1]), int(name[2]))
        if g.name != name:
            raise InputError(f"unknown generator name: {name!r}")
        return g


GENERATORS: Tuple[GenIndex, ...] = tuple(
    GenIndex.parse(n) for n in ("x01", "x12", "x23", "x30", "x02", "x13", "x20", "x31")
)
GENERATOR_NAMES: Tuple[str, ...] = tuple(g.name for g in GENERATORS)


@dataclass(frozen=True)
class GenAssignment:
    """One matrix per generator, all square of the same size over ``q.domain``."""

    q: QParam
    dim: int
    matrices: Tuple[DomainMatrix, ...]

    def __post_init__(self):
        if len(self.matrices) != len(GENERATORS):
            raise InputError("an assignment needs exactly 8 generator matrices")
        for g, M in zip(GENERATORS, self.matrices):
            if M.shape != (self.dim, self.dim):
                raise InputError(f"{g.name} has shape {M.shape}, expected {(self.dim, self.dim)}")
            if M.domain != self.q.domain:
                raise InputError(f"{g.name} is not over the domain of q")

    @classmethod
    def from_mapping(cls, q: QParam, mats: Mapping[str, DomainMatrix]) -> "GenAssignment":
        missing = [n for n in GENERATOR_NAMES if n not in mats]
        if missing:
            raise InputError(f"missing generators: {', '.join(missing)}")
        extra = sorted(set(mats) - set(GENERATOR_NAMES))
        if extra:
            raise InputError(f"unknown generators: {', '.join(extra)}")
        dim = mats["x01"].shape[0]
        return cls(q, dim, tuple(mats[n] for n in GENERATOR_NAMES))

    @classmethod
    def constant(cls, q: QParam, dim: int, value=1) -> "GenAssignment":
        M = la.scale(la.identity(dim, q.domain), q.convert(value))
        return cls(q, dim, (M,) * len(GENERATORS))

    def __getitem__(self, key) -> DomainMatrix:
        if isinstance(key, str):
            key = GenIndex.parse(key)
        elif not isinstance(key, GenIndex):
            key = GenIndex.of(*key)
        return self.matrices[GENERATORS.index(key)]

    def items(self) -> Iterable[Tuple[GenIndex, DomainMatrix]]:
        return zip(GENERATORS, self.matrices)

    def as_dict(self) -> Dict[str, DomainMatrix]:
        return {g.name: M for g, M in self.items()}

    def map(self, fn: Callable[[GenIndex, DomainMatrix], DomainMatrix]) -> "GenAssignment":
        return GenAssignment(self.q, self.dim, tuple(fn(g, M) for g, M in self.items()))

    def replace(self, name: str, M: DomainMatrix) -> "GenAssignment":
        target = GenIndex.parse(name)
        return self.map(lambda g, X: M if g == target else X)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenAssignment):
            return NotImplemented
        return (
            self.q == other.q
            and self.dim == other.dim
            and all(la.matrices_equal(a, b) for a, b in zip(self.matrices, other.matrices))
        )

    __hash__ = None


# ---------------------------------------------------------------------------
# relations


class Relation(NamedTuple):
    family: str          # "t1", "t2" or "qserre"
    indices: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.family}({','.join(map(str, self.indices))})"


def relations() -> List[Relation]:
    """The 20 defining relations: 4 inversion, 12 q-Weyl, 4 cubic q-Serre."""
    out = [Relation("t1", (r,)) for r in range(4)]
    for ds, dt in ((1, 1), (1, 2), (2, 1)):
        for r in range(4):
            out.append(Relation("t2", (r, (r + ds) % 4, (r + ds + dt) % 4)))
    out.extend(Relation("qserre", (r,)) for r in range(4))
    return out


def residual_t1(A: GenAssignment, r: int) -> DomainMatrix:
    """x_{r,r+2} x_{r+2,r} - I."""
    return A[(r, r + 2)] * A[(r + 2, r)] - la.identity(A.dim, A.q.domain)


def residual_t2(A: GenAssignment, r: int, s: int, t: int) -> DomainMatrix:
    """(q x_rs x_st - q^-1 x_st x_rs) / (q - q^-1) - I."""
    pattern = ((s - r) % 4, (t - s) % 4)
    if pattern not in ((1, 1), (1, 2), (2, 1)):
        raise InputError(f"({r},{s},{t}) is not an admissible q-Weyl triple")
    q = A.q
    X, Y = A[(r, s)], A[(s, t)]
    qi = q.power(-1)
    expr = la.scale(X * Y, q.value) - la.scale(Y * X, qi)
    return la.scale(expr, q.one / (q.value - qi)) - la.identity(A.dim, q.domain)


def residual_qserre(A: GenAssignment, r: int) -> DomainMatrix:
    """X^3 Y - [3] X^2 Y X + [3] X Y X^2 - Y X^3 with X = x_{r,r+1}, Y = x_{r+2,r+3}."""
    X, Y = A[(r, r + 1)], A[(r + 2, r + 3)]
    b3 = A.q.bracket(3)
    X2 = X * X
    return X2 * X * Y - la.scale(X2 * Y * X, b3) + la.scale(X * Y * X2, b3) - Y * X2 * X


def residual(A: GenAssignment, rel: Relation) -> DomainMatrix:
    if rel.family == "t1":
        return residual_t1(A, *rel.indices)
    if rel.family == "t2":
        return residual_t2(A, *rel.indices)
    if rel.family == "qserre":
        return residual_qserre(A, *rel.indices)
    raise InputError(f"unknown relation family {rel.family!r}")


def check_relations(A: GenAssignment) -> Report:
    """Evaluate all 20 relations; one finding per nonzero residual."""
    rep = Report(subject="relations")
    for rel in relations():
        R = residual(A, rel)
        if not la.is_zero_matrix(R):
            rep.fail(f"relation.{rel.family}", rel.label, A.q.format_matrix(R))
    logger.debug("relations: %d of 20 fail", len(rep.findings))
    return rep


# ---------------------------------------------------------------------------
# automorphisms


def apply_rho(A: GenAssignment) -> GenAssignment:
    """Relabel so that the output at (r, s) is the input at (r-1, s-1)."""
    return A.map(lambda g, _: A[g.shifted(-1)])


def apply_sign_flip(A: GenAssignment) -> GenAssignment:
    minus = A.q.convert(-1)
    return A.map(lambda _, M: la.scale(M, minus))
