"""Exact interpolation tools for blow-ups of toric surfaces of Picard rank one.

Decides emptiness of |dH - mE| and point separation by bounded-degree curves
through certified ranks of lattice-point power matrices, builds witness
curves for the Gonzalez-Karu slope criterion, and classifies weight triples
of weighted projective planes.
"""

__version__ = "0.1.0"

from .classify import (  # noqa: E402
    Triple,
    Verdict,
    apply_rules,
    classify,
    find_negative_classes,
    scan,
    validate_triple,
)
from .errors import (  # noqa: E402
    ConfigurationError,
    DomainError,
    InvariantViolation,
    NormalizationIntegralityError,
    PreconditionError,
    ValidationError,
    VerticalEdgeError,
)
from .exact import PRIMES, PrimeField, binom, isqrt, m_min  # noqa: E402
from .gk import (  # noqa: E402
    build_gk_matrix,
    gk_criterion,
    gk_det_predicate,
    gk_interpolation_curve,
    gk_witness,
    search_gk_triangles,
)
from .lattice import (  # noqa: E402
    AffineUnimodularMap,
    SupportSet,
    Triangle,
    apply_map,
    count_integers,
    enumerate_points,
    gk_normalize,
    gk_setup_check,
    parse_triangle,
    support_from_wpp,
    triangle_data,
)
from .linalg import (  # noqa: E402
    build_A,
    build_B,
    deriv_orders,
    left_kernel_exact,
    linear_system_empty,
    rank,
    separating_polynomial,
)
