"""Exact scattering diagrams, toric mutation calculus, and ellipsoid-embedding
staircases over the rationals."""

from .series import (
    TruncatedSeries,
    TruncationMismatch,
    is_primitive,
    primitive_part,
    rot90,
    wedge,
)
from .scattering import (
    ConventionError,
    DefectReport,
    ScatteringDiagram,
    TermCapExceeded,
    TruncationTooLow,
    Wall,
    apply_wall,
    canonicalize,
    change_of_lattice,
    defect_at_order,
    diagram_from_json,
    diagram_to_json,
    diagram_to_svg,
    initial_diagram,
    ks_complete,
    log_coefficient,
    ray_spectrum,
    total_monodromy,
)
from .toric import (
    OrbitNode,
    ToricModel,
    elementary_transform_fan,
    gl2z_equivalent,
    half_shear,
    mutate,
    mutation_orbit,
    parse_model,
    w_t0,
    w_t0_inverse,
)
from .curves import (
    Classification,
    CrossCheckReport,
    classify_pair,
    curve_index,
    degeneration_admissible,
    diophantine_value,
    double_point_count,
    exceeds_tau4,
    inflation_upper_bound,
    obstruction_lower_bound,
    pair_to_ray,
    phi_map,
    psi_map,
    ray_to_pair,
    reflect_r,
    scattering_cross_check,
    shift_decomposition_index,
    shift_s,
    unicuspidal_families,
    visible_area,
)
from .staircase import (
    ExceptionalClass,
    SqrtValue,
    UNSPECIFIED,
    WeightSequence,
    ball_embedding_value,
    enumerate_exceptional_classes,
    fib,
    folding_bound,
    inner_corner,
    is_exceptional_class,
    obstruction_sup,
    outer_corner,
    stabilized_value,
    step_height,
    weight_sequence,
)

__version__ = "0.1.0"
