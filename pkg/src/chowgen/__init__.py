"""chowgen: exact integral Chow ring presentations.

Computes, simplifies and verifies graded ring presentations with integer
torsion kept exact: spaces of rational normal curves, classifying rings
of the orthogonal and general linear families, and the degeneracy-locus
ideals they are built from.
"""

from .polyring import (
    ExactDivisionError,
    GradedRingSpec,
    Polynomial,
    RingMismatchError,
    embed,
    exact_div,
    graded_component,
    poly_add,
    poly_mul,
    render_polynomial,
)
from .chern import (
    ChernSeries,
    NonSymmetricError,
    RootExpansion,
    TruncationError,
    chern_ring,
    dual_chern,
    generic_bundle,
    invert_series,
    projective_pushforward,
    sym_power_chern,
    symmetric_reduce,
    tensor_line,
    thom_porteous_affine,
    thom_porteous_projective,
)
from .locusideals import (
    DegeneracyIdeal,
    chern_relation,
    ideal_I1,
    ideal_I2,
    ideal_J1,
    ideal_J2,
)
from .presentations import (
    GroupSpec,
    Presentation,
    hyperplane_class,
    ideal_contains,
    ideal_equal,
    present,
    present_gl2,
    present_hilbert_even,
    present_hilbert_odd,
    present_hilbert_rational,
    present_orthogonal,
    present_sl2n,
    present_special_orthogonal_odd,
    simplify,
    verify_beta_ideal,
    verify_cs_membership,
)
from .grstruct import (
    GradedPiece,
    Guard,
    ScaleExceededError,
    graded_group,
    graded_groups,
    hermite_normal_form,
    invariant_factors,
    monomial_basis,
    smith_normal_form,
    torsion_check,
)

__version__ = "0.1.0"
