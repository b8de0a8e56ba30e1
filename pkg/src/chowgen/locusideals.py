"""Chow ideals of the four tautological degeneracy loci.

For a rank-e bundle E there are four fibrations carrying a dependence or
rank-drop locus: the sum of e copies of E and the quadratic forms Sym^2 E*,
each in an affine and a projectivized version.  The ideal of classes
supported on each locus is generated by e explicit series coefficients:

    I1: 1 / c(E*)                     J1: c(sum of e copies of O(1)) / c(E*)
    I2: c(E*) / c(E)                  J2: c(E* (1)) / c(E)

Generators are emitted exactly as series coefficients, with no sign or
content cleanup; presentation simplification handles that separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chern import ChernSeries, TruncationError, dual_chern, invert_series, tensor_line
from .polyring import GradedRingSpec, Polynomial, embed

KINDS = ("I1", "J1", "I2", "J2")


@dataclass(frozen=True)
class DegeneracyIdeal:
    """Generator list of one of the four locus ideals.

    Exactly ``bundle_rank`` generators, the i-th homogeneous of degree i.
    The projective kinds J1/J2 carry the degree-1 hyperplane class of
    their ambient projectivization; the affine kinds do not.
    """

    kind: str
    bundle_rank: int
    generators: tuple[tuple[int, Polynomial], ...]
    ambient: GradedRingSpec
    line_class: Polynomial | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ideal kind {self.kind!r}")
        if len(self.generators) != self.bundle_rank:
            raise ValueError("expected one generator per degree 1..rank")
        for i, (degree, poly) in enumerate(self.generators, start=1):
            if degree != i:
                raise ValueError("generators must be listed in degree order")
            if not poly.is_zero() and poly.homogeneous_degree() != i:
                raise ValueError(f"generator {i} is not homogeneous of degree {i}")
        if self.kind in ("J1", "J2"):
            if self.line_class is None:
                raise ValueError(f"{self.kind} requires the projective line class")
        elif self.line_class is not None:
            raise ValueError(f"{self.kind} is affine and carries no line class")

    def polynomials(self) -> list[Polynomial]:
        return [poly for _, poly in self.generators]


def _series_generators(series: Polynomial, e: int) -> tuple[tuple[int, Polynomial], ...]:
    return tuple((i, series.graded_component(i)) for i in range(1, e + 1))


def _require_trunc(E: ChernSeries, e: int):
    if E.trunc < e:
        raise TruncationError(
            f"series truncated at {E.trunc}, but {e} generators are needed"
        )


def ideal_I1(E: ChernSeries) -> DegeneracyIdeal:
    """Dependence locus in the total space of e copies of E: the
    generators are the first e Segre classes of E*."""
    e = E.rank
    _require_trunc(E, e)
    series = invert_series(dual_chern(E)).series
    return DegeneracyIdeal("I1", e, _series_generators(series, e), E.series.ring)


def ideal_J1(E: ChernSeries, L: Polynomial) -> DegeneracyIdeal:
    """Projectivized dependence locus: coefficients of (1+L)^e / c(E*)."""
    e = E.rank
    _require_trunc(E, e)
    ring = L.ring
    inverse = invert_series(dual_chern(E.in_ring(ring))).series
    series = (ring.one + L).pow_trunc(e, e).mul_trunc(inverse, e)
    return DegeneracyIdeal(
        "J1", e, _series_generators(series, e), ring, line_class=L
    )


def ideal_I2(E: ChernSeries) -> DegeneracyIdeal:
    """Degenerate quadratic forms in Sym^2 E*: coefficients of c(E*)/c(E)."""
    e = E.rank
    _require_trunc(E, e)
    series = dual_chern(E).series.mul_trunc(invert_series(E).series, e)
    return DegeneracyIdeal("I2", e, _series_generators(series, e), E.series.ring)


def ideal_J2(E: ChernSeries, L: Polynomial) -> DegeneracyIdeal:
    """Projectivized degenerate quadrics: coefficients of c(E*(L))/c(E)."""
    e = E.rank
    _require_trunc(E, e)
    ring = L.ring
    twisted = tensor_line(dual_chern(E.in_ring(ring)), L)
    series = twisted.series.mul_trunc(
        invert_series(E.in_ring(ring)).series, e
    )
    return DegeneracyIdeal(
        "J2", e, _series_generators(series, e), ring, line_class=L
    )


def chern_relation(F: ChernSeries, L: Polynomial) -> Polynomial:
    """The defining relation of a projective bundle's Chow ring:
    p(L) = L^r + c_1(F) L^(r-1) + ... + c_r(F), homogeneous of degree r."""
    r = F.rank
    _require_trunc(F, r)
    ring = L.ring
    series = embed(F.series, ring)
    total = ring.zero
    power = ring.one
    for j in range(r, -1, -1):
        # power holds L^(r-j)
        total = total + series.graded_component(j) * power
        power = power * L
    return total


# -- symbolic identities from the pushforward proof chain --------------------


def verify_proof_chain_i1(e: int) -> bool:
    """Pushing zeta^(e-1+i) down the projectivization of E* must give the
    i-th affine generator for 1 <= i <= e."""
    ring = GradedRingSpec(
        [(f"c{i}", i) for i in range(1, e + 1)] + [("zeta", 1)]
    )
    from .chern import generic_bundle, projective_pushforward

    E = generic_bundle(e, trunc=2 * e, ring=ring)
    ideal = ideal_I1(E)
    zeta = ring.var("zeta")
    dual = dual_chern(E)
    for i, (_, alpha) in enumerate(ideal.generators, start=1):
        if projective_pushforward(zeta ** (e - 1 + i), dual) != alpha:
            return False
    return True


def verify_proof_chain_j1(e: int) -> bool:
    """Pushing zeta^(i-1) (L+zeta)^e down the same tower must give the
    i-th projective generator for 1 <= i <= e."""
    ring = GradedRingSpec(
        [(f"c{i}", i) for i in range(1, e + 1)] + [("L", 1), ("zeta", 1)]
    )
    from .chern import generic_bundle, projective_pushforward

    E = generic_bundle(e, trunc=2 * e, ring=ring)
    L = ring.var("L")
    zeta = ring.var("zeta")
    ideal = ideal_J1(E, L)
    dual = dual_chern(E)
    top = (L + zeta) ** e
    for i, (_, alpha) in enumerate(ideal.generators, start=1):
        if projective_pushforward(zeta ** (i - 1) * top, dual) != alpha:
            return False
    return True
