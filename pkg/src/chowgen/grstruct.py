"""Exact graded abelian group structure of presentation quotients.

Everything reduces to integer linear algebra done degree by degree: the
degree-n piece of Z[x]/I is the cokernel of the lattice spanned by the
monomial multiples of the relations that land in degree n.  Smith normal
form over Z gives the invariant factors, Hermite normal form gives
canonical lattice bases and exact membership tests.  All arithmetic is on
Python ints; there is no rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polyring import GradedRingSpec, Monomial, Polynomial


class ScaleExceededError(RuntimeError):
    """A degree slice is larger than the resource guard allows."""


@dataclass(frozen=True)
class Guard:
    """Hard ceiling on slice sizes.  Exceeding it is an error, never an
    approximation."""

    max_rows: int = 50_000
    max_basis: int = 5_000


DEFAULT_GUARD = Guard()


# -- monomial bases ----------------------------------------------------------


def monomial_basis(ring: GradedRingSpec, n: int) -> list[Monomial]:
    """All monomials of weighted degree exactly ``n``, in descending
    graded-lex order (the order used for rendering and slice coordinates)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    weights = ring.weights
    out: list[Monomial] = []

    def fill(position: int, remaining: int, prefix: tuple[int, ...]):
        if position == len(weights):
            if remaining == 0:
                out.append(prefix)
            return
        w = weights[position]
        for e in range(remaining // w, -1, -1):
            fill(position + 1, remaining - e * w, prefix + (e,))

    fill(0, n, ())
    return out


def polynomial_to_vector(p: Polynomial, basis: Sequence[Monomial]) -> list[int]:
    vec = [p.terms.get(m, 0) for m in basis]
    if sum(1 for c in p.terms.values() if c) != sum(1 for c in vec if c):
        raise ValueError("polynomial has terms outside the slice basis")
    return vec


def vector_to_polynomial(
    ring: GradedRingSpec, basis: Sequence[Monomial], row: Sequence[int]
) -> Polynomial:
    return Polynomial(ring, {m: c for m, c in zip(basis, row) if c})


@dataclass(frozen=True)
class DegreeSlice:
    """The degree-n coordinates of a relation ideal.

    ``matrix`` rows are the coordinate vectors of m*r over ``basis``, for
    each relation r and each monomial m with deg(m) + deg(r) = n.
    """

    degree: int
    basis: tuple[Monomial, ...]
    matrix: tuple[tuple[int, ...], ...]


def degree_slice(
    ring: GradedRingSpec,
    relations: Sequence[Polynomial],
    n: int,
    guard: Guard | None = None,
) -> DegreeSlice:
    guard = guard or DEFAULT_GUARD
    basis = monomial_basis(ring, n)
    if len(basis) > guard.max_basis:
        raise ScaleExceededError(
            f"scale exceeded: {len(basis)} basis monomials in degree {n} "
            f"(guard {guard.max_basis})"
        )
    shifts: list[tuple[Polynomial, list[Monomial]]] = []
    total_rows = 0
    for rel in relations:
        d = rel.homogeneous_degree()
        if d > n:
            continue
        ms = monomial_basis(ring, n - d)
        total_rows += len(ms)
        shifts.append((rel, ms))
    if total_rows > guard.max_rows:
        raise ScaleExceededError(
            f"scale exceeded: {total_rows} relation rows in degree {n} "
            f"(guard {guard.max_rows})"
        )
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for rel, ms in shifts:
        for m in ms:
            row = [0] * len(basis)
            for mono, coeff in rel.terms.items():
                shifted = tuple(a + b for a, b in zip(mono, m))
                row[index[shifted]] = coeff
            rows.append(tuple(row))
    return DegreeSlice(n, tuple(basis), tuple(rows))


# -- Hermite normal form -----------------------------------------------------


def hermite_normal_form(
    rows: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[int]]:
    """Canonical row HNF of the lattice spanned by ``rows``.

    Returns (echelon rows, pivot columns).  Pivots are positive and the
    entries above each pivot are reduced into [0, pivot).
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        # gcd-eliminate the column below row r
        while True:
            candidates = [i for i in range(r, len(work)) if work[i][col]]
            if not candidates:
                break
            i0 = min(candidates, key=lambda i: (abs(work[i][col]), i))
            work[r], work[i0] = work[i0], work[r]
            done = True
            for i in range(r + 1, len(work)):
                if work[i][col]:
                    q = work[i][col] // work[r][col]
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][col]:
                        done = False
            if done:
                break
        if r < len(work) and work[r][col]:
            if work[r][col] < 0:
                work[r] = [-a for a in work[r]]
            pivot = work[r][col]
            for i in range(r):
                q = work[i][col] // pivot
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
            pivot_cols.append(col)
            r += 1
            if r == len(work):
                break
    return [row for row in work[:r]], pivot_cols


def lattice_member(
    hnf_rows: Sequence[Sequence[int]],
    pivot_cols: Sequence[int],
    vector: Sequence[int],
) -> bool:
    """Exact membership of ``vector`` in the lattice given by its HNF."""
    residual = list(vector)
    for row, col in zip(hnf_rows, pivot_cols):
        if residual[col]:
            q, rem = divmod(residual[col], row[col])
            if rem:
                return False
            residual = [a - q * b for a, b in zip(residual, row)]
    return not any(residual)


# -- Smith normal form -------------------------------------------------------


def _min_abs_entry(D, k, m, n):
    best = None
    for i in range(k, m):
        for j in range(k, n):
            if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(
    matrix: Sequence[Sequence[int]], check: bool = False
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``U * A * V = D`` over Z.

    ``D`` is diagonal with the invariant factor chain d1 | d2 | ...; U and
    V are unimodular.  The pivot is always the entry of least absolute
    value in the remaining block, which keeps coefficient growth tame at
    the slice sizes this package works with.
    """
    D = [list(row) for row in matrix]
    m = len(D)
    n = len(D[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        D[dst] = [a + factor * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + factor * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, factor):
        for row in D:
            row[dst] += factor * row[src]
        for row in V:
            row[dst] += factor * row[src]

    k = 0
    while k < min(m, n):
        position = _min_abs_entry(D, k, m, n)
        if position is None:
            break
        swap_rows(k, position[0])
        swap_cols(k, position[1])
        while True:
            # clear column k, restarting with any nonzero remainder as the
            # new (strictly smaller) pivot
            restart = False
            for i in range(k + 1, m):
                if D[i][k]:
                    q = D[i][k] // D[k][k]
                    add_row(i, k, -q)
                    if D[i][k]:
                        swap_rows(i, k)
                        restart = True
                        break
            if restart:
                continue
            for j in range(k + 1, n):
                if D[k][j]:
                    q = D[k][j] // D[k][k]
                    add_col(j, k, -q)
                    if D[k][j]:
                        swap_cols(j, k)
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the whole remaining block for the
            # invariant-factor chain
            witness = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i][j] % D[k][k]:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            add_row(k, witness, 1)
        if D[k][k] < 0:
            D[k] = [-a for a in D[k]]
            U[k] = [-a for a in U[k]]
        k += 1

    if check:
        product = _mat_mul(_mat_mul(U, [list(r) for r in matrix]), V)
        if product != D:
            raise AssertionError("Smith normal form postcondition U*A*V == D failed")
        diagonal = [D[i][i] for i in range(min(m, n))]
        for a, b in zip(diagonal, diagonal[1:]):
            if a == 0 and b != 0:
                raise AssertionError("zero invariant factor before a nonzero one")
            if a and b % a:
                raise AssertionError("invariant factors do not form a chain")
    return D, U, V


def _mat_mul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    n = len(B[0])
    return [
        [sum(a * B[t][j] for t, a in enumerate(row)) for j in range(n)] for row in A
    ]


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form (the invariant factors)."""
    D, _, _ = smith_normal_form(matrix)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(abs(D[i][i]))
    return out


# -- graded group structure --------------------------------------------------


@dataclass(frozen=True)
class GradedPiece:
    """One degree of a graded abelian group: free rank plus the invariant
    factors that are > 1, in a divisibility chain."""

    free_rank: int
    torsion: tuple[int, ...]

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        if not parts:
            return "0"
        return " ⊕ ".join(parts)

    def machine(self) -> tuple[int, list[int]]:
        return (self.free_rank, list(self.torsion))


GradedAbelianGroup = dict[int, GradedPiece]


def graded_group(presentation, n: int, guard: Guard | None = None) -> GradedPiece:
    """Structure of degree ``n`` of the presentation's quotient ring.

    ``presentation`` needs ``ring`` and ``relations`` (label, polynomial)
    attributes; the cokernel of the degree-n relation lattice is returned.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    relations = [poly for _, poly in presentation.relations]
    piece = degree_slice(presentation.ring, relations, n, guard)
    if not piece.matrix:
        return GradedPiece(len(piece.basis), ())
    factors = invariant_factors(piece.matrix)
    free_rank = len(piece.basis) - len(factors)
    return GradedPiece(free_rank, tuple(d for d in factors if d > 1))


def graded_groups(
    presentation, max_degree: int, guard: Guard | None = None
) -> GradedAbelianGroup:
    return {
        n: graded_group(presentation, n, guard) for n in range(max_degree + 1)
    }


def torsion_check(presentation, degrees, guard: Guard | None = None) -> bool:
    """True iff the quotient has free rank 0 in every requested degree."""
    degrees = list(degrees)
    if any(n == 0 for n in degrees):
        raise ValueError("torsion check applies to positive degrees only")
    return all(
        graded_group(presentation, n, guard).free_rank == 0 for n in degrees
    )
