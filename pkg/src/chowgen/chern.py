"""Chern class calculus via the splitting principle.

Total Chern classes are truncated series 1 + c_1 + c_2 + ... over a
weighted ring.  Symmetric powers of rank 2 and 3 bundles are computed by
expanding a product over explicit Chern roots and reducing the symmetric
result to the elementary symmetric classes; series inversion gives Segre
classes, which drive the projective bundle pushforward.

Root variables (a, b, c) live in a dedicated internal ring and never
escape this module: every public result is expressed in c_1 ... c_r.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .polyring import (
    GradedRingSpec,
    Polynomial,
    embed,
    exact_div,
)


class NonSymmetricError(ValueError):
    """Input to symmetric reduction was not actually symmetric."""


class TruncationError(ValueError):
    """A series was truncated below what the operation needs."""


ROOT_NAMES = ("a", "b", "c")


def chern_ring(rank: int, prefix: str = "c") -> GradedRingSpec:
    """Z[c_1, ..., c_rank] with weight i on c_i."""
    return GradedRingSpec((f"{prefix}{i}", i) for i in range(1, rank + 1))


def root_ring(num_roots: int) -> GradedRingSpec:
    if not 1 <= num_roots <= len(ROOT_NAMES):
        raise ValueError(f"root expansions support 1..{len(ROOT_NAMES)} roots")
    return GradedRingSpec((name, 1) for name in ROOT_NAMES[:num_roots])


@dataclass(frozen=True)
class RootExpansion:
    """A symmetric expression in formal Chern root variables."""

    num_roots: int
    expression: Polynomial


@dataclass(frozen=True)
class ChernSeries:
    """Truncated total Chern class of a declared-rank bundle.

    ``series`` has constant term 1 and no terms of weighted degree above
    ``trunc``.  For a genuine bundle series the components above ``rank``
    vanish; derived series (inverses, quotients) may carry them.
    """

    rank: int
    series: Polynomial
    trunc: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.trunc < 0:
            raise ValueError("truncation bound must be >= 0")
        if self.series.constant_term() != 1:
            raise ValueError("total Chern series must have constant term 1")
        degree = self.series.degree()
        if degree is not None and degree > self.trunc:
            raise ValueError("series carries terms above its truncation bound")

    def component(self, i: int) -> Polynomial:
        return self.series.graded_component(i)

    def is_genuine(self) -> bool:
        """No components between rank and trunc: a bona fide bundle series."""
        return all(
            self.component(i).is_zero() for i in range(self.rank + 1, self.trunc + 1)
        )

    def with_trunc(self, trunc: int) -> "ChernSeries":
        if trunc == self.trunc:
            return self
        if trunc < self.trunc:
            return ChernSeries(self.rank, self.series.truncate(trunc), trunc)
        if self.trunc < self.rank:
            raise TruncationError(
                "cannot extend a series truncated below its rank; "
                "higher components are unknown"
            )
        return ChernSeries(self.rank, self.series, trunc)

    def in_ring(self, target: GradedRingSpec) -> "ChernSeries":
        return ChernSeries(self.rank, embed(self.series, target), self.trunc)

    def render(self) -> str:
        from .polyring import render_polynomial

        return render_polynomial(self.series, ascending_degrees=True)


def generic_bundle(
    rank: int, trunc: int | None = None, ring: GradedRingSpec | None = None,
    prefix: str = "c",
) -> ChernSeries:
    """The universal rank-r series 1 + c_1 + ... + c_r."""
    ring = ring or chern_ring(rank, prefix)
    trunc = rank if trunc is None else trunc
    series = ring.one
    for i in range(1, rank + 1):
        if i <= trunc:
            series = series + ring.var(f"{prefix}{i}")
    return ChernSeries(rank, series, trunc)


# -- series operations -------------------------------------------------------


def _invert_polynomial(series: Polynomial, trunc: int) -> Polynomial:
    """Inverse of a constant-term-1 series, solved degree by degree."""
    components = {n: series.graded_component(n) for n in range(1, trunc + 1)}
    inverse = [series.ring.one]
    for n in range(1, trunc + 1):
        acc = series.ring.zero
        for i in range(1, n + 1):
            if not components[i].is_zero():
                acc = acc + components[i] * inverse[n - i]
        inverse.append(-acc)
    total = series.ring.zero
    for piece in inverse:
        total = total + piece
    return total


def invert_series(c: ChernSeries) -> ChernSeries:
    """The total Segre series: s with c * s = 1 up to the truncation."""
    return ChernSeries(c.rank, _invert_polynomial(c.series, c.trunc), c.trunc)


def dual_chern(c: ChernSeries) -> ChernSeries:
    """Sign rule for duals: the degree-i component is negated iff i is odd."""
    total = c.series.ring.zero
    for n in range(c.trunc + 1):
        piece = c.component(n)
        total = total + (-piece if n % 2 else piece)
    return ChernSeries(c.rank, total, c.trunc)


def tensor_line(c: ChernSeries, t: Polynomial) -> ChernSeries:
    """Total Chern class of E tensor a line bundle with first Chern class t.

    Shifting each Chern root by t gives, in closed form,
    c_j(E(t)) = sum_i C(rank-i, j-i) c_i(E) t^(j-i); ``c`` must be a
    genuine bundle series of its declared rank.
    """
    if not (t.is_zero() or (t.is_homogeneous() and t.homogeneous_degree() == 1)):
        raise ValueError("line class must be homogeneous of degree 1")
    ring = t.ring
    r = c.rank
    components = [embed(c.component(i), ring) for i in range(min(r, c.trunc) + 1)]
    powers = [ring.one]
    for _ in range(min(r, c.trunc)):
        powers.append(powers[-1] * t)
    total = ring.zero
    for j in range(min(r, c.trunc) + 1):
        for i in range(j + 1):
            if i < len(components) and not components[i].is_zero():
                coefficient = math.comb(r - i, j - i)
                if coefficient:
                    total = total + coefficient * components[i] * powers[j - i]
    return ChernSeries(r, total.truncate(c.trunc), c.trunc)


# -- symmetric powers --------------------------------------------------------


def _elementary_symmetric(ring: GradedRingSpec, k: int) -> Polynomial:
    total = ring.zero
    for combo in itertools.combinations(range(ring.nvars), k):
        exps = [0] * ring.nvars
        for i in combo:
            exps[i] = 1
        total = total + ring.monomial(exps)
    return total


def _check_symmetric(expression: Polynomial, num_roots: int):
    names = expression.ring.names
    for k in range(num_roots - 1):
        swapped = {}
        for mono, coeff in expression.terms.items():
            m = list(mono)
            m[k], m[k + 1] = m[k + 1], m[k]
            swapped[tuple(m)] = coeff
        if swapped != expression.terms:
            raise NonSymmetricError(
                f"expression is not symmetric: swapping {names[k]} and "
                f"{names[k + 1]} changes it"
            )


def symmetric_reduce(
    expansion: RootExpansion, target: GradedRingSpec | None = None
) -> Polynomial:
    """Express a symmetric root polynomial in e_1 ... e_r = c_1 ... c_r.

    Repeated leading-term elimination under lex order; the leading
    exponent of a symmetric polynomial is a partition, so each step
    strictly lowers the lex-leading monomial and the loop terminates.
    """
    r = expansion.num_roots
    expression = expansion.expression
    if expression.ring.nvars != r:
        raise ValueError("expression ring does not match the declared root count")
    _check_symmetric(expression, r)
    target = target or chern_ring(r)
    if target.nvars < r:
        raise ValueError("target ring needs at least one class per root")
    elementary = [_elementary_symmetric(expression.ring, k) for k in range(r + 1)]
    result = target.zero
    work = expression
    while not work.is_zero():
        lead = max(work.terms)
        if any(lead[i] < lead[i + 1] for i in range(r - 1)):
            raise NonSymmetricError("leading exponent is not a partition")
        coefficient = work.terms[lead]
        multipliers = [
            lead[i] - (lead[i + 1] if i + 1 < r else 0) for i in range(r)
        ]
        subtrahend = expression.ring.one
        target_term = target.one
        for i, e in enumerate(multipliers):
            if e:
                subtrahend = subtrahend * elementary[i + 1] ** e
                target_term = target_term * target.var(target.names[i]) ** e
        work = work - coefficient * subtrahend
        result = result + coefficient * target_term
    return result


def sym_power_chern(rank: int, d: int, trunc: int) -> ChernSeries:
    """Total Chern class of Sym^d of a rank 2 or 3 bundle.

    The Chern roots of Sym^d are the weighted sums i*a + (d-i)*b
    (rank 2) resp. i*a + j*b + k*c with i+j+k = d (rank 3); the product
    of (1 + root) is expanded, truncated, and reduced to c_1 ... c_rank.
    Sym^0 is the trivial line bundle, so d = 0 returns the unit series.
    """
    if rank not in (2, 3):
        raise ValueError("symmetric powers are implemented for ranks 2 and 3 only")
    if d < 0:
        raise ValueError("symmetric power must be >= 0")
    if trunc < 0:
        raise ValueError("truncation bound must be >= 0")
    target = chern_ring(rank)
    if d == 0:
        return ChernSeries(1, target.one, trunc)
    ring = root_ring(rank)
    if rank == 2:
        a, b = (ring.var(n) for n in ring.names)
        roots = [i * a + (d - i) * b for i in range(d + 1)]
        sym_rank = d + 1
    else:
        a, b, c = (ring.var(n) for n in ring.names)
        roots = [
            i * a + j * b + (d - i - j) * c
            for i in range(d + 1)
            for j in range(d - i + 1)
        ]
        sym_rank = (d + 1) * (d + 2) // 2
    product = ring.one
    for root in roots:
        product = product.mul_trunc(ring.one + root, trunc)
    series = symmetric_reduce(RootExpansion(rank, product), target)
    return ChernSeries(sym_rank, series, trunc)


def sym2_degree1_closed_form(d: int, ring: GradedRingSpec | None = None) -> Polynomial:
    """Closed form d(d+1)/2 * c1 for the first class of Sym^d (rank 2)."""
    ring = ring or chern_ring(2)
    return exact_div(d * (d + 1) * ring.var(ring.names[0]), 2)


def sym2_degree2_closed_form(d: int, ring: GradedRingSpec | None = None) -> Polynomial:
    """Closed form of the second class of Sym^d of a rank-2 bundle:
    d(d-1)(d+1)(3d+2)/24 * c1^2 + d(d+1)(d+2)/6 * c2."""
    ring = ring or chern_ring(2)
    c1 = ring.var(ring.names[0])
    c2 = ring.var(ring.names[1])
    first = exact_div(d * (d - 1) * (d + 1) * (3 * d + 2) * (c1 * c1), 24)
    second = exact_div(d * (d + 1) * (d + 2) * c2, 6)
    return first + second


# -- Thom-Porteous classes and pushforwards ----------------------------------


def thom_porteous_affine(Q: ChernSeries) -> Polynomial:
    """Class of the kernel sub-bundle inside the affine total space: c_q(Q)."""
    if Q.trunc < Q.rank:
        raise TruncationError("series truncated below the bundle rank")
    return Q.component(Q.rank)


def thom_porteous_projective(Q: ChernSeries, H: Polynomial) -> Polynomial:
    """Projectivized version: the degree-q part of c(Q) / c(O(-1)).

    ``H`` is the hyperplane class of the ambient projectivization, so
    c(O(-1)) = 1 - H and dividing means multiplying by 1 + H + H^2 + ...
    """
    if not (H.is_zero() or (H.is_homogeneous() and H.homogeneous_degree() == 1)):
        raise ValueError("hyperplane class must be homogeneous of degree 1")
    ring = H.ring
    q = Q.rank
    geometric = ring.one
    power = ring.one
    for _ in range(q):
        power = power * H
        geometric = geometric + power
    product = embed(Q.series, ring).truncate(q).mul_trunc(geometric, q)
    return product.graded_component(q)


def segre_class(F: ChernSeries, j: int) -> Polynomial:
    """The degree-j coefficient of 1/c(F)."""
    if j < 0:
        return F.series.ring.zero
    if j > F.trunc:
        raise TruncationError(f"Segre class s_{j} needs truncation >= {j}")
    return _invert_polynomial(F.series, j).graded_component(j)


def projective_pushforward(
    p: Polynomial, F: ChernSeries, zeta: str = "zeta"
) -> Polynomial:
    """Pushforward along P(F) -> base of a class written in the fiber
    hyperplane class.

    Writing p = sum zeta^k * (base class), each zeta^k maps to the Segre
    class s_(k - rank F + 1) of F, with s_j = 0 for j < 0.  In particular
    zeta^(f-1) pushes to 1 and lower powers push to 0.
    """
    ring = p.ring
    zi = ring.index(zeta)
    f = F.rank
    max_power = max((m[zi] for m in p.terms), default=0)
    needed = max_power - f + 1
    segre_total = _invert_polynomial(embed(F.series, ring), max(needed, 0))
    segre = {j: segre_total.graded_component(j) for j in range(max(needed, 0) + 1)}
    result = ring.zero
    for mono, coeff in p.terms.items():
        j = mono[zi] - f + 1
        if j < 0:
            continue
        base = list(mono)
        base[zi] = 0
        result = result + coeff * (ring.monomial(base) * segre[j])
    return result


def verify_pushforward_identity(f: int, trunc: int | None = None) -> bool:
    """Symbolic check that pushing forward zeta^(i-1) * c_f(G(zeta))
    recovers the degree-i coefficients of c(G)/c(F), for equal ranks.
    """
    trunc = trunc or 2 * f
    pairs = [(f"f{i}", i) for i in range(1, f + 1)]
    pairs += [(f"g{i}", i) for i in range(1, f + 1)]
    pairs += [("zeta", 1)]
    ring = GradedRingSpec(pairs)
    F = generic_bundle(f, trunc=trunc, ring=ring, prefix="f")
    G = generic_bundle(f, trunc=trunc, ring=ring, prefix="g")
    zeta = ring.var("zeta")
    quotient = G.series.mul_trunc(_invert_polynomial(F.series, trunc), f)
    twisted_top = tensor_line(G, zeta).component(f)
    for i in range(1, f + 1):
        lhs = projective_pushforward(zeta ** (i - 1) * twisted_top, F)
        if lhs != quotient.graded_component(i):
            return False
    return True
