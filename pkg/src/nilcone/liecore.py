"""Skew-symmetric algebras with exact rational structure constants.

A bracket is stored sparsely as a map (i, j, k) -> coefficient with the
canonical orientation i < j; antisymmetry is implicit.  Indices are
1-based everywhere in the public API, matching the algebra file format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError
from .linalg import (
    Echelon,
    ONE,
    Vec,
    ZERO,
    dense_row,
    frac,
    mat_inv,
    mat_vec,
    nullspace,
)

Key = tuple[int, int, int]


def _normalize_constants(dim: int, constants: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
    out: dict[Key, Fraction] = {}
    for (i, j, k), v in constants.items():
        v = frac(v)
        if v == 0:
            continue
        if i == j:
            raise ParseError(f"bracket [e{i}, e{j}] is identically zero")
        if i > j:
            i, j, v = j, i, -v
        if not (1 <= i < j <= dim and 1 <= k <= dim):
            raise ParseError(f"index out of range in triple ({i}, {j}, {k}) for dim {dim}")
        if (i, j, k) in out:
            raise ParseError(f"duplicate structure constant for ({i}, {j}, {k})")
        out[(i, j, k)] = v
    return out


@dataclass(frozen=True)
class LieBracket:
    """Element of the variety of skew-symmetric algebras of dimension ``dim``."""

    dim: int
    constants: Mapping[Key, Fraction]

    def __post_init__(self):
        if self.dim < 1:
            raise ParseError("dimension must be positive")
        object.__setattr__(
            self, "constants", _normalize_constants(self.dim, self.constants)
        )

    def __eq__(self, other):
        return (
            isinstance(other, LieBracket)
            and self.dim == other.dim
            and dict(self.constants) == dict(other.constants)
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.constants.items())))

    def keys(self) -> list[Key]:
        """Index set I_mu in canonical (i, j, k) order."""
        return sorted(self.constants)

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Signed structure constant for any orientation of (i, j)."""
        if i == j:
            return ZERO
        if i < j:
            return self.constants.get((i, j, k), ZERO)
        return -self.constants.get((j, i, k), ZERO)

    def basis_bracket(self, i: int, j: int) -> Vec:
        """[e_i, e_j] as a coefficient vector (0-based)."""
        out = [ZERO] * self.dim
        for k in range(1, self.dim + 1):
            out[k - 1] = self.c(i, j, k)
        return tuple(out)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        """mu(x, y) for arbitrary rational vectors (0-based coordinates)."""
        out = [ZERO] * self.dim
        for (i, j, k), cv in self.constants.items():
            coeff = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if coeff:
                out[k - 1] += cv * coeff
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.constants

    def scale(self, s) -> "LieBracket":
        s = frac(s)
        if s == 0:
            return LieBracket(self.dim, {})
        return LieBracket(self.dim, {key: s * v for key, v in self.constants.items()})

    def diagonal_act(self, h: Sequence[Fraction]) -> "LieBracket":
        """h . mu for h = Diag(h_1, ..., h_n): c' = (h_k / (h_i h_j)) c."""
        new = {}
        for (i, j, k), v in self.constants.items():
            new[(i, j, k)] = frac(h[k - 1]) / (frac(h[i - 1]) * frac(h[j - 1])) * v
        return LieBracket(self.dim, new)


@dataclass(frozen=True)
class SubspaceChain:
    """Nested subspaces, e.g. the lower central series.

    ``terms`` holds one basis matrix (tuple of vectors) per nonzero term;
    ``terminates`` is True when the series stabilizes at zero.
    """

    terms: tuple[tuple[Vec, ...], ...]
    dims: tuple[int, ...]
    terminates: bool

    @property
    def nilpotency_class(self) -> int:
        return len(self.dims)


def parse_bracket(text: str) -> LieBracket:
    """Parse the line-based algebra file format."""
    dim = None
    raw: dict[Key, Fraction] = {}
    orientation: dict[Key, tuple[int, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "dim" or len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'dim N' first, got {line!r}")
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad dimension {parts[1]!r}")
            if dim < 1:
                raise ParseError(f"line {lineno}: dimension must be positive")
            continue
        if parts[0] == "dim":
            raise ParseError(f"line {lineno}: repeated 'dim' line")
        if parts[0] != "bracket" or len(parts) != 5:
            raise ParseError(f"line {lineno}: malformed line {line!r}")
        try:
            i, j, k = int(parts[1]), int(parts[2]), int(parts[3])
            v = Fraction(parts[4])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: malformed bracket entry {line!r}")
        if v == 0:
            raise ParseError(f"line {lineno}: zero coefficient")
        if i == j:
            raise ParseError(f"line {lineno}: bracket [e{i}, e{j}] is identically zero")
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise ParseError(f"line {lineno}: index out of range")
        key = (min(i, j), max(i, j), k)
        orient = (i, j)
        if key in raw:
            prev = orientation[key]
            if prev != orient:
                raise ParseError(
                    f"line {lineno}: conflicting orientation for [e{i}, e{j}]"
                )
            raise ParseError(f"line {lineno}: duplicate triple ({i}, {j}, {k})")
        raw[key] = v if i < j else -v
        orientation[key] = orient
    if dim is None:
        raise ParseError("missing 'dim N' line")
    return LieBracket(dim, raw)


def emit_bracket(mu: LieBracket) -> str:
    """Inverse of parse_bracket; rationals in lowest terms, sign on numerator."""
    lines = [f"dim {mu.dim}"]
    for (i, j, k) in mu.keys():
        v = mu.constants[(i, j, k)]
        sval = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        lines.append(f"bracket {i} {j} {k} {sval}")
    return "\n".join(lines) + "\n"


def check_jacobi(mu: LieBracket) -> tuple[bool, tuple[int, int, int] | None]:
    """Exact Jacobi test on all basis triples; returns first violator if any."""
    n = mu.dim
    basis = [tuple(ONE if t == s else ZERO for t in range(n)) for s in range(n)]
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            ab = mu.basis_bracket(a, b)
            for c in range(b + 1, n + 1):
                bc = mu.basis_bracket(b, c)
                ca = mu.basis_bracket(c, a)
                total = [
                    x + y + z
                    for x, y, z in zip(
                        mu.bracket(ab, basis[c - 1]),
                        mu.bracket(bc, basis[a - 1]),
                        mu.bracket(ca, basis[b - 1]),
                    )
                ]
                if any(total):
                    return False, (a, b, c)
    return True, None


def _span_basis(vectors: Iterable[Vec], n: int) -> tuple[Vec, ...]:
    ech = Echelon(n)
    for v in vectors:
        ech.add_row(dense_row(v))
    basis = []
    for p in sorted(ech.pivots):
        row = ech.pivots[p]
        v = [ZERO] * n
        for c, val in row.items():
            v[c] = val
        basis.append(tuple(v))
    return tuple(basis)


def lower_central_series(mu: LieBracket) -> SubspaceChain:
    """gamma_1 = n, gamma_{k+1} = [n, gamma_k]; stops at stabilization."""
    n = mu.dim
    current = tuple(
        tuple(ONE if t == s else ZERO for t in range(n)) for s in range(n)
    )
    terms = [current]
    dims = [n]
    while True:
        images = []
        for i in range(1, n + 1):
            ei = tuple(ONE if t == i - 1 else ZERO for t in range(n))
            for v in current:
                w = mu.bracket(ei, v)
                if any(w):
                    images.append(w)
        nxt = _span_basis(images, n)
        d = len(nxt)
        if d == dims[-1]:
            return SubspaceChain(tuple(terms), tuple(dims), terminates=(d == 0))
        if d == 0:
            return SubspaceChain(tuple(terms), tuple(dims), terminates=True)
        terms.append(nxt)
        dims.append(d)
        current = nxt


def is_nilpotent(mu: LieBracket) -> bool:
    return lower_central_series(mu).terminates


def center(mu: LieBracket) -> tuple[Vec, ...]:
    """Exact basis of {X : mu(X, e_i) = 0 for all i}."""
    n = mu.dim
    rows = []
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            row = {}
            for a in range(1, n + 1):
                cv = mu.c(a, i, k)
                if cv:
                    row[a - 1] = cv
            if row:
                rows.append(row)
    return tuple(nullspace(rows, n))


def act(g: Sequence[Sequence[Fraction]], mu: LieBracket) -> LieBracket:
    """Basis change g . mu := g mu(g^{-1} ., g^{-1} .)."""
    n = mu.dim
    ginv = mat_inv(g)
    cols = [tuple(ginv[r][i] for r in range(n)) for i in range(n)]
    new: dict[Key, Fraction] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            w = mat_vec(g, mu.bracket(cols[i - 1], cols[j - 1]))
            for k in range(1, n + 1):
                if w[k - 1]:
                    new[(i, j, k)] = w[k - 1]
    return LieBracket(n, new)


def is_nice_basis(mu: LieBracket) -> bool:
    """Combinatorial nice-basis test.

    Each [e_i, e_j] must hit a single basis vector, and two different pairs
    may share a target only if they are disjoint.
    """
    targets: dict[tuple[int, int], int] = {}
    for (i, j, k) in mu.keys():
        if (i, j) in targets:
            return False  # multi-term bracket
        targets[(i, j)] = k
    by_target: dict[int, list[tuple[int, int]]] = {}
    for pair, k in targets.items():
        by_target.setdefault(k, []).append(pair)
    for pairs in by_target.values():
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                if set(pairs[a]) & set(pairs[b]):
                    return False
    return True
