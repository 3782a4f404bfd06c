"""Classification of smooth embeddings of closed 4-manifolds in 7-space.

The library turns intersection-form and homology data into: the image
of the embedding invariant (characteristic classes of square sigma),
isotopy-class counts where the square-free-signature criterion gives a
bijection, triviality/effectiveness verdicts for the knot
connected-sum action, complement homotopy models, and the low-degree
bordism computations that back the theory.
"""

from .ahss import (
    AHSSPage,
    CoefficientRow,
    Degree7Report,
    SpaceDescriptor,
    degree7_after_known_differentials,
    e2_page,
    obstruction_groups,
    sq2_dual_cp,
)
from .classify import (
    BHEnumeration,
    ClassificationReport,
    CountVerdict,
    KnotTableResult,
    Manifold4Data,
    R6Report,
    action_effective,
    action_trivial,
    classify_r7,
    compressible,
    embeds_in_r6,
    embeds_in_r7,
    knot_table,
    triviality_applicable,
)
from .complement import (
    ComplementModel,
    euler_characteristic,
    homology_of,
    pi3_of,
    wedge_form,
)
from .errors import DegenerateFormError, InvalidInputError, UnsupportedQueryError
from .exactalg import (
    FgAbGroup,
    IntMatrix,
    cokernel,
    congruence_diagonalize,
    determinant,
    group_sum,
    inertia,
    invariant_factors,
    is_unimodular,
    smith_normal_form,
)
from .lattice import (
    Finiteness,
    H2Class,
    IntegralLattice,
    divisibility,
    enumerate_characteristic,
    hyperbolic_plane,
    hyperbolic_split,
    is_characteristic,
    is_even,
    is_primitive,
    signature,
)
from .tables import (
    GroupTableEntry,
    TableSet,
    default_tables,
    homology_sphere_action_nontrivial,
    load_tables,
    lookup,
)
from .verdict import Verdict

__version__ = "0.1.0"
