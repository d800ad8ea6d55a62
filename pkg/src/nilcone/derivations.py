"""Derivation algebras, diagonal derivations, and the obstruction tests.

The derivation algebra Der(mu) is the exact nullspace of E -> E.mu on
n x n matrices.  The characteristically-nilpotent decision builds an
Engel flag: it succeeds iff every derivation is strictly triangular in
an adapted basis, and fails with a stage witness otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotADerivationError
from .liecore import LieBracket
from .linalg import (
    Echelon,
    Mat,
    ONE,
    Vec,
    ZERO,
    dense_row,
    mat_inv,
    mat_mul,
    min_norm_solution,
    nullspace,
    solve_affine,
)


@dataclass(frozen=True)
class DerivationBasis:
    dim_algebra: int
    basis: tuple[Mat, ...]

    def __len__(self):
        return len(self.basis)


@dataclass(frozen=True)
class DiagonalDerivationSpace:
    basis: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, t) -> Vec:
        """Map parameter coordinates to a diagonal derivation vector."""
        n = len(self.basis[0])
        return tuple(
            sum((Fraction(t[m]) * self.basis[m][r] for m in range(len(self.basis))), ZERO)
            for r in range(n)
        )


def rep_action(e: Mat, mu: LieBracket) -> dict[tuple[int, int], Vec]:
    """(E.mu)(e_i, e_j) for i < j, as coefficient vectors."""
    n = mu.dim
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            res = [ZERO] * n
            # E mu(e_i, e_j)
            for k in range(1, n + 1):
                cv = mu.c(i, j, k)
                if cv:
                    for r in range(n):
                        if e[r][k - 1]:
                            res[r] += cv * e[r][k - 1]
            # - mu(E e_i, e_j) - mu(e_i, E e_j)
            for p in range(1, n + 1):
                if e[p - 1][i - 1]:
                    for k in range(1, n + 1):
                        cv = mu.c(p, j, k)
                        if cv:
                            res[k - 1] -= e[p - 1][i - 1] * cv
                if e[p - 1][j - 1]:
                    for k in range(1, n + 1):
                        cv = mu.c(i, p, k)
                        if cv:
                            res[k - 1] -= e[p - 1][j - 1] * cv
            out[(i, j)] = tuple(res)
    return out


def is_derivation(e: Mat, mu: LieBracket) -> bool:
    return all(not any(v) for v in rep_action(e, mu).values())


def derivation_algebra(mu: LieBracket) -> DerivationBasis:
    """Exact nullspace of E -> E.mu; unknown E_{pq} indexed as p*n + q (0-based)."""
    n = mu.dim
    rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for r in range(1, n + 1):
                row: dict[int, Fraction] = {}

                def add(p, q, v):
                    if v:
                        idx = (p - 1) * n + (q - 1)
                        nv = row.get(idx, ZERO) + v
                        if nv:
                            row[idx] = nv
                        else:
                            row.pop(idx, None)

                for k in range(1, n + 1):
                    add(r, k, mu.c(i, j, k))
                for p in range(1, n + 1):
                    add(p, i, -mu.c(p, j, r))
                    add(p, j, -mu.c(i, p, r))
                if row:
                    rows.append(row)
    rows.sort(key=len)
    vecs = nullspace(rows, n * n)
    mats = tuple(
        tuple(tuple(v[p * n + q] for q in range(n)) for p in range(n)) for v in vecs
    )
    return DerivationBasis(n, mats)


def diagonal_derivations(mu: LieBracket) -> DiagonalDerivationSpace:
    """Solutions of d_k = d_i + d_j over the nonzero structure constants."""
    rows = []
    for (i, j, k) in mu.keys():
        row: dict[int, Fraction] = {}
        for idx, v in ((k - 1, ONE), (i - 1, -ONE), (j - 1, -ONE)):
            nv = row.get(idx, ZERO) + v
            if nv:
                row[idx] = nv
            else:
                row.pop(idx, None)
        if row:
            rows.append(row)
    return DiagonalDerivationSpace(tuple(nullspace(rows, mu.dim)))


def is_diagonal_derivation(d: Vec, mu: LieBracket) -> bool:
    return all(d[k - 1] == d[i - 1] + d[j - 1] for (i, j, k) in mu.keys())


def all_derivations_traceless(mu: LieBracket) -> bool:
    der = derivation_algebra(mu)
    return all(
        sum((e[r][r] for r in range(mu.dim)), ZERO) == 0 for e in der.basis
    )


@dataclass(frozen=True)
class EngelResult:
    is_nilpotent: bool
    flag_dims: tuple[int, ...]
    # on failure: stage index and the operators induced on the quotient
    witness_stage: int | None = None
    witness_operators: tuple[Mat, ...] = ()


def _common_kernel(mats: list[Mat], n: int) -> list[Vec]:
    rows = []
    for m in mats:
        for r in range(n):
            row = dense_row(m[r])
            if row:
                rows.append(row)
    return nullspace(rows, n)


def is_characteristically_nilpotent(mu: LieBracket) -> EngelResult:
    """Engel-flag decision: true iff all derivations are nilpotent."""
    n = mu.dim
    der = derivation_algebra(mu)
    if not der.basis:
        return EngelResult(True, (n,))
    flag_vectors: list[Vec] = []
    flag_dims: list[int] = []
    stage = 0
    while len(flag_vectors) < n:
        # complement of the current flag subspace by standard basis vectors
        ech = Echelon(n)
        for v in flag_vectors:
            ech.add_row(dense_row(v))
        comp = ech.free_columns()
        full = [list(v) for v in flag_vectors] + [
            [ONE if t == c else ZERO for t in range(n)] for c in comp
        ]
        m_cols = tuple(zip(*full))  # columns are the adapted basis
        m_inv = mat_inv(m_cols)
        d = len(flag_vectors)
        induced = []
        for e in der.basis:
            t = mat_mul(m_inv, mat_mul(e, m_cols))
            induced.append(tuple(tuple(t[d + a][d + b] for b in range(len(comp))) for a in range(len(comp))))
        kernel = _common_kernel(induced, len(comp))
        if not kernel:
            return EngelResult(
                False,
                tuple(flag_dims),
                witness_stage=stage,
                witness_operators=tuple(induced),
            )
        for kv in kernel:
            lift = tuple(
                sum((kv[a] * (ONE if t == comp[a] else ZERO) for a in range(len(comp))), ZERO)
                for t in range(n)
            )
            flag_vectors.append(lift)
        flag_dims.append(len(flag_vectors))
        stage += 1
    return EngelResult(True, tuple(flag_dims))


def diagonal_part(e: Mat) -> Mat:
    n = len(e)
    return tuple(
        tuple(e[i][j] if i == j else ZERO for j in range(n)) for i in range(n)
    )


def diagonal_projection_is_derivation(mu: LieBracket) -> bool:
    der = derivation_algebra(mu)
    return all(is_derivation(diagonal_part(e), mu) for e in der.basis)


INFEASIBLE = "infeasible"


def solve_phi_on_diagonal(mu: LieBracket) -> Vec | str:
    """Solve tr(phi . E) = tr(E) over the Der basis, phi in the diagonal torus.

    Returns the minimum-norm diagonal solution, or INFEASIBLE when no
    diagonal derivation satisfies the trace pairing (which does not prove
    a pre-Einstein derivation fails to exist off the diagonal).
    """
    n = mu.dim
    der = derivation_algebra(mu)
    dspace = diagonal_derivations(mu)
    if dspace.dim == 0:
        # phi = 0 is the only candidate; works iff every trace vanishes
        if all(sum((e[r][r] for r in range(n)), ZERO) == 0 for e in der.basis):
            return (ZERO,) * n
        return INFEASIBLE
    # unknowns: coordinates t over the diagonal-derivation basis
    rows = []
    rhs = []
    for e in der.basis:
        row = {}
        for m, v in enumerate(dspace.basis):
            coeff = sum((v[r] * e[r][r] for r in range(n)), ZERO)
            if coeff:
                row[m] = coeff
        rows.append(row)
        rhs.append(sum((e[r][r] for r in range(n)), ZERO))
    sol = solve_affine(rows, rhs, dspace.dim)
    if sol is None:
        return INFEASIBLE
    part, null = sol
    # minimize the norm of phi itself, not of the coordinates
    phi0 = dspace.point(part)
    null_phi = [dspace.point(v) for v in null]
    return min_norm_solution(phi0, null_phi)


def require_diagonal_derivation(d: Vec, mu: LieBracket) -> None:
    if not is_diagonal_derivation(d, mu):
        raise NotADerivationError(f"{d} is not a diagonal derivation")
