"""Named graded ring presentations and exact operations on them.

This module builds the integral Chow ring presentations the package is
about: the classifying rings of the orthogonal families, GL(2) and its
determinant-torsion subgroups, and the Hilbert scheme rings of rational
normal curves (even, odd and rationalized forms).  It also provides the
simplification pass that turns the raw series relations into their short
textbook forms, and exact ideal comparison over Z via degree slices.

Relations are stored exactly as they come out of the series arithmetic
(no sign or content normalization); display may normalize the leading
sign, storage never does.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import grstruct
from .chern import ChernSeries, chern_ring, dual_chern, generic_bundle, invert_series, sym_power_chern
from .grstruct import Guard, degree_slice, hermite_normal_form, lattice_member
from .locusideals import chern_relation, ideal_I2
from .polyring import (
    GradedRingSpec,
    Polynomial,
    eliminate_variable,
    embed,
    rename_variables,
    render_polynomial,
)

log = logging.getLogger(__name__)

ORTHOGONAL = "orthogonal"
SPECIAL_ORTHOGONAL = "special-orthogonal"
GL2 = "gl2"
SL2N = "sl2n"
HILBERT_EVEN = "hilbert-even"
HILBERT_ODD = "hilbert-odd"
HILBERT_RATIONAL = "hilbert-rational"

FAMILIES = (
    ORTHOGONAL,
    SPECIAL_ORTHOGONAL,
    GL2,
    SL2N,
    HILBERT_EVEN,
    HILBERT_ODD,
    HILBERT_RATIONAL,
)


@dataclass(frozen=True)
class GroupSpec:
    """Which presentation to build: a family name plus its parameter."""

    family: str
    parameter: int | None = None

    def validate(self):
        f, p = self.family, self.parameter
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        if f == GL2:
            if p is not None:
                raise ValueError("gl2 takes no parameter")
            return
        if p is None:
            raise ValueError(f"family {f} requires a parameter")
        if f == ORTHOGONAL and p < 1:
            raise ValueError("orthogonal rank k must be >= 1")
        if f == SPECIAL_ORTHOGONAL and (p < 1 or p % 2 == 0):
            raise ValueError("special-orthogonal dimension n must be odd and >= 1")
        if f == SL2N and p < 1:
            raise ValueError("sl2n parameter n must be >= 1")
        if f == HILBERT_EVEN and (p < 2 or p % 2):
            raise ValueError("even family requires even degree d >= 2")
        if f == HILBERT_ODD and (p < 1 or p % 2 == 0):
            raise ValueError("odd family requires odd degree d >= 1")
        if f == HILBERT_RATIONAL and p < 1:
            raise ValueError("rational family requires degree d >= 1")


@dataclass(frozen=True)
class Presentation:
    """A graded quotient ring: generators with weights, plus homogeneous
    relations as (label, polynomial) pairs."""

    ring: GradedRingSpec
    relations: tuple[tuple[str, Polynomial], ...]
    provenance: str = ""

    def __post_init__(self):
        for label, poly in self.relations:
            if poly.is_zero():
                raise ValueError(f"zero relation {label!r}; drop it before building")
            if poly.ring != self.ring:
                raise ValueError(f"relation {label!r} lives in the wrong ring")
            degree = poly.homogeneous_degree()
            if degree < 1:
                raise ValueError(f"relation {label!r} must have positive degree")

    def relation_polynomials(self) -> list[Polynomial]:
        return [poly for _, poly in self.relations]

    def render_text(self) -> str:
        """One-line display form, e.g. ``Z[H]/(3H, H^3)``."""
        ring = str(self.ring)
        if not self.relations:
            return ring
        rendered = ", ".join(
            render_polynomial(poly, style="compact", normalize_sign=True)
            for _, poly in self.relations
        )
        return f"{ring}/({rendered})"


def make_presentation(
    ring: GradedRingSpec,
    relations: Iterable[tuple[str, Polynomial]],
    provenance: str = "",
) -> Presentation:
    """Build a presentation, dropping (and logging) zero relations."""
    kept = []
    for label, poly in relations:
        if poly.is_zero():
            log.info("dropping zero relation %s", label)
            continue
        kept.append((label, poly))
    return Presentation(ring, tuple(kept), provenance)


# -- classifying space presentations -----------------------------------------


def present_orthogonal(k: int) -> Presentation:
    """Chow ring of the rank-k orthogonal group: odd classes are 2-torsion."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ring = chern_ring(k)
    relations = [
        (f"2c{i}", 2 * ring.var(f"c{i}")) for i in range(1, k + 1, 2)
    ]
    return make_presentation(ring, relations, f"Chow ring of O({k})")


def present_special_orthogonal_odd(n: int) -> Presentation:
    """Chow ring of SO(n) for odd n: c1 vanishes, higher odd classes are
    2-torsion."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 1")
    ring = chern_ring(n)
    relations = [("c1", ring.var("c1"))]
    relations += [(f"2c{i}", 2 * ring.var(f"c{i}")) for i in range(3, n + 1, 2)]
    return make_presentation(ring, relations, f"Chow ring of SO({n})")


def present_gl2() -> Presentation:
    """Chow ring of GL(2): the free ring on c1, c2."""
    return make_presentation(chern_ring(2), [], "Chow ring of GL(2)")


def present_sl2n(n: int) -> Presentation:
    """Chow ring of the subgroup of GL(2) whose determinant is an n-th
    root of unity: Z[c1,c2]/(n c1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ring = chern_ring(2)
    return make_presentation(
        ring, [(f"{n}c1", n * ring.var("c1"))], f"Chow ring of SL(2, mu_{n})"
    )


# -- Hilbert scheme presentations --------------------------------------------


def hilbert_even_ring() -> GradedRingSpec:
    return GradedRingSpec((("c1", 1), ("c2", 2), ("c3", 3), ("L", 1)))


def hilbert_even_relation_series(d: int) -> Polynomial:
    """The relation series (1+L)^(d+1) c(Sym^(n-2) S) / c(Sym^n S) for the
    rank-3 bundle S, truncated at degree d+1, over Z[c1,c2,c3,L]."""
    n = d // 2
    ring = hilbert_even_ring()
    bound = d + 1
    L = ring.var("L")
    if n - 2 <= 0:
        numerator = ring.one
    else:
        numerator = embed(sym_power_chern(3, n - 2, bound).series, ring)
    denominator = invert_series(sym_power_chern(3, n, bound)).series
    series = (ring.one + L).pow_trunc(bound, bound)
    series = series.mul_trunc(numerator, bound)
    return series.mul_trunc(embed(denominator, ring), bound)


def present_hilbert_even(
    d: int, substitute_c1: bool = False, include_chern_relation: bool = False
) -> Presentation:
    """Chow ring of the degree-d rational normal curve space, d even.

    Generators c1, c2, c3 (classes of the rank-3 bundle) and the
    tautological degree-1 class L; relations are c1, 2c3 and the first
    d+1 coefficients of the twisted symmetric-power quotient series.  The
    projective-bundle relation p(L) sits in codimension (d+1)^2, far above
    the dimension of the space, so it is a relation among classes that
    are already zero and is omitted by default.

    ``substitute_c1`` emits the series coefficients with c1 already set
    to zero (same ideal, since c1 itself is the first relation).
    """
    if d < 2 or d % 2:
        raise ValueError("d must be even and >= 2")
    ring = hilbert_even_ring()
    relations: list[tuple[str, Polynomial]] = [
        ("c1", ring.var("c1")),
        ("2c3", 2 * ring.var("c3")),
    ]
    series = hilbert_even_relation_series(d)
    if substitute_c1:
        from .polyring import substitute_zero

        series = substitute_zero(series, "c1")
    for i in range(1, d + 2):
        relations.append((f"q{i}", series.graded_component(i)))
    if include_chern_relation:
        n = d // 2
        bound = (d + 1) ** 2
        if n - 2 <= 0:
            numerator = ring.one
        else:
            numerator = embed(
                dual_chern(sym_power_chern(3, n - 2, bound)).series, ring
            )
        f_d = embed(
            dual_chern(sym_power_chern(3, n, bound)).series, ring
        ).mul_trunc(_invert(numerator, bound), bound)
        total = f_d.pow_trunc(d + 1, bound)
        F = ChernSeries((d + 1) ** 2, total, bound)
        relations.append(("p", chern_relation(F, ring.var("L"))))
    return make_presentation(
        ring,
        relations,
        f"integral Chow ring of the space of degree-{d} rational normal curves",
    )


def _invert(series: Polynomial, trunc: int) -> Polynomial:
    from .chern import _invert_polynomial

    return _invert_polynomial(series, trunc)


def present_hilbert_odd(d: int) -> Presentation:
    """Chow ring of the degree-d rational normal curve space, d odd.

    Generators c1, c2 of the rank-2 bundle; relations are n*c1 for
    d = 2n-1 together with the d+1 Chern classes of Sym^d of the bundle.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError("d must be odd and >= 1")
    n = (d + 1) // 2
    ring = chern_ring(2)
    relations = [(f"{n}c1", n * ring.var("c1"))]
    sym = sym_power_chern(2, d, d + 1)
    for i in range(1, d + 2):
        relations.append((f"sym{i}", sym.component(i)))
    return make_presentation(
        ring,
        relations,
        f"integral Chow ring of the space of degree-{d} rational normal curves",
    )


def present_hilbert_rational(d: int) -> Presentation:
    """The GL(2)-equivariant form whose rationalization computes the
    Chow ring with Q coefficients: relations are the d+1 Chern classes
    of Sym^d of the rank-2 bundle."""
    if d < 1:
        raise ValueError("d must be >= 1")
    ring = chern_ring(2)
    sym = sym_power_chern(2, d, d + 1)
    relations = [(f"sym{i}", sym.component(i)) for i in range(1, d + 2)]
    return make_presentation(
        ring,
        relations,
        f"rationalized Chow ring of the space of degree-{d} rational normal curves",
    )


def present(spec: GroupSpec, simplified: bool = False) -> Presentation:
    """Dispatch a GroupSpec to its presentation, optionally simplified.

    For the even family at d = 2 the tautological class L coincides with
    the hyperplane class H (L = nH with n = 1), so the simplified output
    is renamed accordingly.
    """
    spec.validate()
    f, p = spec.family, spec.parameter
    if f == ORTHOGONAL:
        result = present_orthogonal(p)
    elif f == SPECIAL_ORTHOGONAL:
        result = present_special_orthogonal_odd(p)
    elif f == GL2:
        result = present_gl2()
    elif f == SL2N:
        result = present_sl2n(p)
    elif f == HILBERT_EVEN:
        result = present_hilbert_even(p)
    elif f == HILBERT_ODD:
        result = present_hilbert_odd(p)
    else:
        result = present_hilbert_rational(p)
    if simplified:
        result = simplify(result)
        if f == HILBERT_EVEN and p == 2 and "L" in result.ring.names:
            result = rename_presentation(result, {"L": "H"})
    return result


# -- simplification -----------------------------------------------------------


def _slice_rows(ring, polys, n):
    if not polys:
        basis = grstruct.monomial_basis(ring, n)
        return basis, []
    piece = degree_slice(ring, polys, n)
    return list(piece.basis), [list(r) for r in piece.matrix]


def _unit_monomial(poly: Polynomial):
    """The exponent tuple of a one-term, coefficient +-1 relation, else None."""
    if len(poly.terms) != 1:
        return None
    (monomial, coefficient), = poly.terms.items()
    return monomial if abs(coefficient) == 1 else None


def _hnf_pass(ring: GradedRingSpec, polys: list[Polynomial]) -> list[Polynomial]:
    """Rule (a): re-base every degree slice on its Hermite normal form.

    Rows already generated by the relations kept so far are dropped, with
    one exception: a unit-coefficient monomial row is kept (unless it is a
    monomial multiple of a kept monomial relation).  Such rows are
    redundant as generators but witness vanishing monomials, and the
    reference simplified forms list them.
    """
    by_degree: dict[int, list[Polynomial]] = {}
    for poly in polys:
        by_degree.setdefault(poly.homogeneous_degree(), []).append(poly)
    kept: list[Polynomial] = []
    for n in sorted(by_degree):
        lower = [q for q in kept if q.homogeneous_degree() < n]
        basis, lower_rows = _slice_rows(ring, lower, n)
        rows = [list(r) for r in lower_rows]
        for poly in by_degree[n]:
            rows.append(grstruct.polynomial_to_vector(poly, basis))
        hnf, _ = hermite_normal_form(rows)
        checked = [list(r) for r in lower_rows]
        check_hnf, check_pivots = hermite_normal_form(checked)
        for row in hnf:
            candidate = grstruct.vector_to_polynomial(ring, basis, row)
            if lattice_member(check_hnf, check_pivots, row):
                monomial = _unit_monomial(candidate)
                if monomial is None:
                    continue
                witnessed = any(
                    all(e >= f for e, f in zip(monomial, prior))
                    for prior in map(_unit_monomial, kept)
                    if prior is not None
                )
                if witnessed:
                    continue
            kept.append(candidate)
            checked.append(list(row))
            check_hnf, check_pivots = hermite_normal_form(checked)
    return kept


def _eliminate_once(
    ring: GradedRingSpec, polys: list[Polynomial]
) -> tuple[GradedRingSpec, list[Polynomial], bool]:
    """Rule (b): if some relation reads +-g + (terms without g), delete g,
    substituting throughout."""
    for idx, poly in enumerate(polys):
        for v, (name, _) in enumerate(ring.variables):
            unit = tuple(1 if i == v else 0 for i in range(ring.nvars))
            coefficient = poly.terms.get(unit, 0)
            if coefficient not in (1, -1):
                continue
            if any(m[v] and m != unit for m in poly.terms):
                continue
            new_ring = ring.without(name)
            rest = Polynomial(ring, {m: c for m, c in poly.terms.items() if m != unit})
            value = eliminate_variable(-coefficient * rest, name, new_ring.zero, new_ring)
            replaced = []
            for j, other in enumerate(polys):
                if j == idx:
                    continue
                q = eliminate_variable(other, name, value, new_ring)
                if not q.is_zero():
                    replaced.append(q)
            return new_ring, replaced, True
    return ring, polys, False


def simplify(p: Presentation, max_passes: int = 64) -> Presentation:
    """Reduce a presentation to a fixed point of two moves:

    (a) in each degree, replace the relations by the Hermite normal form
        basis of the full relation lattice in that degree, dropping rows
        already generated by lower-degree relations;
    (b) eliminate any generator appearing in a relation with unit
        coefficient and no other occurrence, substituting it away.

    The quotient ring is unchanged up to graded isomorphism; this is not
    a minimal-presentation search, just the moves needed to reach the
    short textbook forms.
    """
    ring = p.ring
    polys = p.relation_polynomials()
    for _ in range(max_passes):
        rebased = _hnf_pass(ring, polys)
        new_ring, new_polys, eliminated = _eliminate_once(ring, rebased)
        if not eliminated and new_polys == polys and new_ring == ring:
            break
        ring, polys = new_ring, new_polys
    else:
        raise RuntimeError("simplification did not reach a fixed point")
    labels: dict[int, int] = {}
    relations = []
    for poly in polys:
        n = poly.homogeneous_degree()
        labels[n] = labels.get(n, 0) + 1
        relations.append((f"r{n}.{labels[n]}", poly))
    return make_presentation(ring, relations, p.provenance)


def rename_presentation(p: Presentation, mapping: Mapping[str, str]) -> Presentation:
    return Presentation(
        p.ring.renamed(mapping),
        tuple((label, rename_variables(poly, mapping)) for label, poly in p.relations),
        p.provenance,
    )


# -- exact ideal comparison ----------------------------------------------------


def ideal_contains(
    generators: Sequence[Polynomial],
    poly: Polynomial,
    ring: GradedRingSpec,
    guard: Guard | None = None,
) -> bool:
    """Exact membership of a homogeneous element in a homogeneous ideal.

    Only the degree slice of the element matters, so this is a single
    lattice membership test over Z.
    """
    if poly.is_zero():
        return True
    n = poly.homogeneous_degree()
    gens = [embed(g, ring) for g in generators if not g.is_zero()]
    piece = degree_slice(ring, gens, n, guard)
    hnf, pivots = hermite_normal_form([list(r) for r in piece.matrix])
    vector = grstruct.polynomial_to_vector(embed(poly, ring), piece.basis)
    return lattice_member(hnf, pivots, vector)


def ideal_equal(
    generators_a: Sequence[Polynomial],
    generators_b: Sequence[Polynomial],
    ring: GradedRingSpec,
    guard: Guard | None = None,
) -> bool:
    """Exact equality of two homogeneous ideals over Z."""
    return all(
        ideal_contains(generators_b, g, ring, guard) for g in generators_a
    ) and all(ideal_contains(generators_a, g, ring, guard) for g in generators_b)


def verify_beta_ideal(k: int) -> bool:
    """The quadric-degeneracy ideal of a rank-k bundle equals
    (2c1, 2c3, 2c5, ...)."""
    ring = chern_ring(k)
    betas = ideal_I2(generic_bundle(k)).polynomials()
    odd = [2 * ring.var(f"c{i}") for i in range(1, k + 1, 2)]
    return ideal_equal(betas, odd, ring)


def verify_cs_membership(k: int, guard: Guard | None = None) -> bool:
    """The top Chern class of Sym^2 of the dual bundle lies in the
    quadric-degeneracy ideal.  Implemented for the rank-3 case (k = 1,
    top class in degree 6); larger ranks would need symmetric powers
    beyond rank 3 and are rejected, never answered wrongly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k != 1:
        raise grstruct.ScaleExceededError(
            "scale exceeded: quadric membership is implemented for rank 3 (k=1)"
        )
    rank = 2 * k + 1
    s = rank * (rank + 1) // 2
    ring = chern_ring(rank)
    betas = ideal_I2(generic_bundle(rank, trunc=rank)).polynomials()
    sym2 = sym_power_chern(rank, 2, s)
    top = dual_chern(sym2).component(s)
    return ideal_contains(betas, embed(top, ring), ring, guard)


# -- hyperplane class arithmetic ----------------------------------------------


@dataclass(frozen=True)
class HyperplaneRelation:
    """How the hyperplane class H and the tautological class L generate
    the degree-1 part Z/(d+1) of the even-case ring: H = -2L and L = nH."""

    d: int
    modulus: int
    h_from_l: int
    l_from_h: int

    def render(self) -> str:
        return (
            f"H = {self.h_from_l}L, L = {self.l_from_h}H "
            f"(mod {self.modulus})"
        )


def hyperplane_class(d: int) -> HyperplaneRelation:
    """Solve L = nH in degree 1 for even d: H = 2dL = -2L mod d+1."""
    if d < 2 or d % 2:
        raise ValueError("d must be even and >= 2")
    n = d // 2
    modulus = d + 1
    h_from_l = (-2) % modulus
    l_from_h = n % modulus
    if (n * -2) % modulus != 1 % modulus:
        raise AssertionError("inverse relation n * (-2) = 1 failed")
    if (2 * d) % modulus != (-2) % modulus:
        raise AssertionError("resultant degree relation 2d = -2 failed")
    return HyperplaneRelation(d, modulus, h_from_l, l_from_h)


# -- serialization --------------------------------------------------------------

SCHEMA_VERSION = 1


def to_document(p: Presentation) -> dict:
    """Versioned structured document: ring, weights, relations in canonical
    rendering plus exact term data, and provenance."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "presentation",
        "ring": [[name, weight] for name, weight in p.ring.variables],
        "relations": [
            {
                "label": label,
                "degree": poly.homogeneous_degree(),
                "text": render_polynomial(poly),
                "terms": sorted(
                    [list(m), c] for m, c in poly.terms.items()
                ),
            }
            for label, poly in p.relations
        ],
        "provenance": p.provenance,
    }


def from_document(document: Mapping) -> Presentation:
    if document.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported schema version {document.get('schema_version')!r}"
        )
    ring = GradedRingSpec((name, weight) for name, weight in document["ring"])
    relations = []
    for entry in document["relations"]:
        poly = Polynomial(ring, {tuple(m): c for m, c in entry["terms"]})
        relations.append((entry["label"], poly))
    return Presentation(ring, tuple(relations), document.get("provenance", ""))
