"""Exact dense linear algebra on top of sympy's DomainMatrix.

Matrices are ``DomainMatrix`` objects over the scalar domain of a
:class:`~qtet.exactmath.QParam`. Subspaces are stored by their reduced
row-echelon basis, which makes equality of subspaces an equality of tuples.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .exactmath import QParam, q_power
from .reports import InputError

logger = logging.getLogger(__name__)

Matrix = DomainMatrix
Vector = Tuple[Any, ...]


# ---------------------------------------------------------------------------
# matrices


def matrix(rows: Sequence[Sequence[Any]], K) -> DomainMatrix:
    rows = [[K.convert(x) for x in row] for row in rows]
    if not rows or not rows[0]:
        raise InputError("matrices must have at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("ragged matrix rows")
    return DomainMatrix(rows, (len(rows), width), K)


def identity(n: int, K) -> DomainMatrix:
    return matrix([[K.one if i == j else K.zero for j in range(n)] for i in range(n)], K)


def zeros(n: int, K, m: Optional[int] = None) -> DomainMatrix:
    return matrix([[K.zero] * (n if m is None else m) for _ in range(n)], K)


def diag(values: Sequence[Any], K) -> DomainMatrix:
    n = len(values)
    return matrix([[values[i] if i == j else K.zero for j in range(n)] for i in range(n)], K)


def scale(M: DomainMatrix, c) -> DomainMatrix:
    return matrix([[c * x for x in row] for row in M.to_list()], M.domain)


def flatten(M: DomainMatrix) -> Vector:
    return tuple(x for row in M.to_list() for x in row)


def unflatten(v: Sequence[Any], n: int, K) -> DomainMatrix:
    return matrix([list(v[i * n:(i + 1) * n]) for i in range(n)], K)


def is_zero_matrix(M: DomainMatrix) -> bool:
    K = M.domain
    return all(K.is_zero(x) for row in M.to_list() for x in row)


def matrices_equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and A.to_list() == B.to_list()


def is_square(M: DomainMatrix) -> bool:
    return M.shape[0] == M.shape[1]


def trace(M: DomainMatrix):
    rows = M.to_list()
    total = M.domain.zero
    for i in range(min(M.shape)):
        total += rows[i][i]
    return total


def is_invertible(M: DomainMatrix) -> bool:
    return is_square(M) and not M.domain.is_zero(M.det())


def inverse(M: DomainMatrix) -> DomainMatrix:
    if not is_invertible(M):
        raise InputError("matrix is singular")
    return M.inv()


def shifted(M: DomainMatrix, lam) -> DomainMatrix:
    """M - lam*I."""
    return M - scale(identity(M.shape[0], M.domain), lam)


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(rows: Sequence[Sequence[Any]], n: int, K) -> Tuple[List[List[Any]], Tuple[int, ...]]:
    if not rows:
        return [], ()
    R, pivots = DomainMatrix([[K.convert(x) for x in r] for r in rows], (len(rows), n), K).rref()
    return R.to_list()[: len(pivots)], tuple(pivots)


def solve_affine(rows: Sequence[Sequence[Any]], rhs: Sequence[Any], n: int, K
                 ) -> Optional[Tuple[List[Any], List[List[Any]]]]:
    """Solve ``rows @ x = rhs``.

    Returns ``None`` when inconsistent, otherwise a particular solution with
    every free variable set to 0 and one homogeneous solution per free
    variable (that variable set to 1).
    """
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = _rref_rows(augmented, n + 1, K)
    if n in pivots:
        return None
    particular = [K.zero] * n
    for row, pc in zip(R, pivots):
        particular[pc] = row[n]
    free = [c for c in range(n) if c not in pivots]
    null = []
    for f in free:
        v = [K.zero] * n
        v[f] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        null.append(v)
    return particular, null


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Tuple[Vector, ...]
    domain: Any = field(compare=False, repr=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Any]], n: int, K) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if any(len(v) != n for v in vecs):
            raise InputError(f"vectors must have length {n}")
        R, _ = _rref_rows(vecs, n, K)
        return cls(n, tuple(tuple(r) for r in R), K)

    @classmethod
    def zero(cls, n: int, K) -> "Subspace":
        return cls(n, (), K)

    @classmethod
    def full(cls, n: int, K) -> "Subspace":
        return cls.span(identity(n, K).to_list(), n, K)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        if other.is_zero:
            return True
        return Subspace.span(self.basis + other.basis, self.ambient_dim, self.domain).dim == self.dim

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}/{self.ambient_dim})"


def _check_ambient(*spaces: Subspace) -> None:
    dims = {s.ambient_dim for s in spaces}
    if len(dims) > 1:
        raise InputError(f"ambient dimension mismatch: {sorted(dims)}")


def kernel(M: DomainMatrix) -> Subspace:
    K = M.domain
    m, n = M.shape
    R, pivots = _rref_rows(M.to_list(), n, K)
    vectors = []
    for f in (c for c in range(n) if c not in pivots):
        v = [K.zero] * n
        v[f] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, n, K)


def eigenspace(M: DomainMatrix, lam) -> Subspace:
    return kernel(shifted(M, lam))


def _zassenhaus(S1: Subspace, S2: Subspace) -> Tuple[Subspace, Subspace]:
    n, K = S1.ambient_dim, S1.domain
    zero_half = [K.zero] * n
    rows = [list(u) + list(u) for u in S1.basis] + [list(w) + zero_half for w in S2.basis]
    R, _ = _rref_rows(rows, 2 * n, K)
    sum_rows, meet_rows = [], []
    for row in R:
        left = row[:n]
        if all(K.is_zero(x) for x in left):
            meet_rows.append(row[n:])
        else:
            sum_rows.append(left)
    return Subspace.span(sum_rows, n, K), Subspace.span(meet_rows, n, K)


def intersect(S1: Subspace, S2: Subspace) -> Subspace:
    _check_ambient(S1, S2)
    if S1.is_zero or S2.is_zero:
        return Subspace.zero(S1.ambient_dim, S1.domain)
    if S1.is_full:
        return S2
    if S2.is_full:
        return S1
    return _zassenhaus(S1, S2)[1]


def subspace_sum(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise InputError("subspace_sum needs at least one subspace")
    _check_ambient(*spaces)
    first = spaces[0]
    rows = [v for s in spaces for v in s.basis]
    return Subspace.span(rows, first.ambient_dim, first.domain)


def image(M: DomainMatrix, S: Subspace) -> Subspace:
    """M applied to S (vectors are columns)."""
    if S.is_zero:
        return S
    B = DomainMatrix([list(v) for v in S.basis], (S.dim, S.ambient_dim), S.domain)
    return Subspace.span((B * M.transpose()).to_list(), S.ambient_dim, S.domain)


def maps_into(M: DomainMatrix, S: Subspace, T: Subspace) -> bool:
    return T.contains(image(M, S))


def annihilator(S: Subspace) -> Subspace:
    """Row vectors y with y.v = 0 for every v in S."""
    if S.is_zero:
        return Subspace.full(S.ambient_dim, S.domain)
    B = DomainMatrix([list(v) for v in S.basis], (S.dim, S.ambient_dim), S.domain)
    return kernel(B)


def is_decomposition(spaces: Sequence[Subspace]) -> bool:
    if not spaces:
        return False
    _check_ambient(*spaces)
    n = spaces[0].ambient_dim
    if sum(s.dim for s in spaces) != n:
        return False
    return subspace_sum(spaces).dim == n


# ---------------------------------------------------------------------------
# decompositions and flags


@dataclass(frozen=True)
class Decomposition:
    components: Tuple[Subspace, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise InputError("a decomposition needs at least one component")
        if any(c.is_zero for c in comps):
            raise InputError("decomposition components must be nonzero")
        if not is_decomposition(comps):
            raise InputError("components do not form a direct sum equal to the space")

    @classmethod
    def attempt(cls, components: Sequence[Subspace]) -> Optional["Decomposition"]:
        if not components or any(c.is_zero for c in components) or not is_decomposition(components):
            return None
        return cls(tuple(components))

    @property
    def diameter(self) -> int:
        return len(self.components) - 1

    @property
    def ambient_dim(self) -> int:
        return self.components[0].ambient_dim

    @property
    def domain(self):
        return self.components[0].domain

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(c.dim for c in self.components)

    def inversion(self) -> "Decomposition":
        return Decomposition(tuple(reversed(self.components)))

    def component(self, i: int) -> Subspace:
        """Component i; the zero space outside 0..d."""
        if 0 <= i <= self.diameter:
            return self.components[i]
        return Subspace.zero(self.ambient_dim, self.domain)

    def span_range(self, lo: int, hi: int) -> Subspace:
        """U_lo + ... + U_hi, clipped to 0..d (empty range gives 0)."""
        lo, hi = max(lo, 0), min(hi, self.diameter)
        if lo > hi:
            return Subspace.zero(self.ambient_dim, self.domain)
        return subspace_sum(self.components[lo:hi + 1])

    def prefix(self, i: int) -> Subspace:
        """U_0 + ... + U_i; zero for i < 0 and the whole space for i >= d."""
        if i >= self.diameter:
            return Subspace.full(self.ambient_dim, self.domain)
        return self.span_range(0, i)

    def suffix(self, i: int) -> Subspace:
        """U_i + ... + U_d; the whole space for i <= 0 and zero for i > d."""
        if i <= 0:
            return Subspace.full(self.ambient_dim, self.domain)
        return self.span_range(i, self.diameter)


@dataclass(frozen=True)
class Flag:
    components: Tuple[Subspace, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps or not comps[-1].is_full:
            raise InputError("the last flag component must be the whole space")
        for a, b in zip(comps, comps[1:]):
            if not (b.contains(a) and b.dim > a.dim):
                raise InputError("flag components must be strictly increasing")
        if comps[0].is_zero:
            raise InputError("flag components must be nonzero")

    @property
    def diameter(self) -> int:
        return len(self.components) - 1

    @property
    def shape(self) -> Tuple[int, ...]:
        dims = [c.dim for c in self.components]
        return tuple(b - a for a, b in zip([0] + dims, dims))


def induced_flag(D: Decomposition) -> Flag:
    return Flag(tuple(D.span_range(0, i) for i in range(D.diameter + 1)))


def flags_opposite(F: Flag, G: Flag) -> Optional[Decomposition]:
    if F.diameter != G.diameter:
        raise InputError(f"flag diameters differ: {F.diameter} vs {G.diameter}")
    d = F.diameter
    for i in range(d + 1):
        for j in range(d - i):
            if not intersect(F.components[i], G.components[j]).is_zero:
                return None
    U = Decomposition.attempt([intersect(F.components[i], G.components[d - i]) for i in range(d + 1)])
    if U is None:
        return None
    if induced_flag(U) != F or induced_flag(U.inversion()) != G:
        return None
    return U


# ---------------------------------------------------------------------------
# spectra with the eigenvalue alphabet {epsilon * q^m}


def q_spectrum(M: DomainMatrix, q: QParam, epsilon: int = 1) -> Dict[int, Subspace]:
    """Nonzero eigenspaces of M for eigenvalues epsilon*q^m, |m| < dim."""
    n = M.shape[0]
    sign = q.convert(epsilon)
    spectrum = {}
    for m in range(-(n - 1), n):
        E = eigenspace(M, sign * q_power(q, m))
        if not E.is_zero:
            spectrum[m] = E
    logger.debug("q-spectrum eps=%s: %s", epsilon, {m: E.dim for m, E in spectrum.items()})
    return spectrum


def is_semisimple_with(M: DomainMatrix, eigenvalues: Sequence[Any]) -> bool:
    """True iff M is diagonalizable and each listed eigenvalue has a nonzero eigenspace."""
    dims = [eigenspace(M, lam).dim for lam in eigenvalues]
    return all(dims) and sum(dims) == M.shape[0]


def q_decomposition(M: DomainMatrix, q: QParam, epsilon: int = 1) -> Optional[Decomposition]:
    """Eigenspaces for epsilon*q^(d-2i), i = 0..d, if M is semisimple with that spectrum."""
    if not is_square(M):
        return None
    spectrum = q_spectrum(M, q, epsilon)
    if not spectrum or sum(E.dim for E in spectrum.values()) != M.shape[0]:
        return None
    exps = sorted(spectrum, reverse=True)
    d = exps[0]
    if exps != [d - 2 * i for i in range(d + 1)]:
        return None
    return Decomposition(tuple(spectrum[d - 2 * i] for i in range(d + 1)))


# ---------------------------------------------------------------------------
# projections and the algebra generated by a family


def projections(D: Decomposition) -> List[DomainMatrix]:
    """F_i with (F_i - I)U_i = 0 and F_i U_j = 0 for j != i."""
    n, K = D.ambient_dim, D.domain
    columns = [v for comp in D.components for v in comp.basis]
    P = DomainMatrix([list(v) for v in columns], (n, n), K).transpose()
    P_inv = P.inv()
    out, start = [], 0
    for comp in D.components:
        sel = [K.one if start <= i < start + comp.dim else K.zero for i in range(n)]
        out.append(P * diag(sel, K) * P_inv)
        start += comp.dim
    return out


def operator_from_decomposition(D: Decomposition, scalars: Sequence[Any]) -> DomainMatrix:
    if len(scalars) != D.diameter + 1:
        raise InputError("one scalar per component is required")
    n, K = D.ambient_dim, D.domain
    total = zeros(n, K)
    for c, F in zip(scalars, projections(D)):
        total = total + scale(F, c)
    return total


def algebra_closure_dim(gens: Sequence[DomainMatrix]) -> int:
    """Dimension of the unital algebra generated by ``gens``.

    Grows a spanning set by left multiplication with the generators until no
    product adds a new direction.
    """
    if not gens:
        raise InputError("algebra_closure_dim needs at least one generator")
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise InputError("generators must be square of equal size")
    K = gens[0].domain
    span = Subspace.zero(n * n, K)
    frontier: List[DomainMatrix] = []

    def absorb(X: DomainMatrix) -> None:
        nonlocal span
        grown = Subspace.span(span.basis + (flatten(X),), n * n, K)
        if grown.dim > span.dim:
            span = grown
            frontier.append(X)

    absorb(identity(n, K))
    for g in gens:
        absorb(g)
    while frontier and span.dim < n * n:
        X = frontier.pop()
        for g in gens:
            absorb(g * X)
    logger.debug("algebra closure: dim %d of %d", span.dim, n * n)
    return span.dim
