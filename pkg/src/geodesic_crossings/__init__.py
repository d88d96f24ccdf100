"""Crossing graphs of spherical geodesic drawings.

Draws complete bipartite graphs with geodesic arcs on S², counts crossings exactly,
builds the crossing graph and estimates its homomorphism densities.

Example:
    from geodesic_crossings import (
        PatternGraph,
        RngStream,
        UniformSphere,
        build_crossing_graph,
        estimate_pH,
        random_bipartite_drawing,
        t_exact,
    )

    rng = RngStream(seed=7)
    drawing = random_bipartite_drawing(UniformSphere(), UniformSphere(), 40, rng)
    graph = build_crossing_graph(drawing)
    print(float(t_exact(PatternGraph.named("k2"), graph)))

    estimate = estimate_pH(
        PatternGraph.named("k3"), UniformSphere(), UniformSphere(), 100_000, rng
    )
"""

from .config import ExperimentConfig
from .crossings import (
    CrossingGraph,
    build_crossing_graph,
    classify_crossing,
    count_crossings,
    crossing_census,
    hom_count_small,
    triangle_census,
    zarankiewicz,
)
from .density import (
    convergence_report,
    estimate_pH,
    estimate_tH_vertex_sampling,
    t_exact,
)
from .drawings import (
    BipartiteDrawing,
    antipodal_drawing,
    base_angles,
    blowup_drawing,
    blowup_tolerance,
    canonicalize,
    golden_offsets,
    random_antipodal_drawing,
    random_bipartite_drawing,
    suitable_rotation_offsets,
)
from .exceptions import (
    CensusOverflow,
    ConfigurationNotCanonical,
    DegenerateConfiguration,
    DegenerateSegment,
    DomainError,
    GeneralPositionViolation,
    GeodesicCrossingsError,
    GeometryError,
    InvalidSpec,
    OddSize,
    TooManyRejections,
    UnsupportedPattern,
)
from .families import random_blowup_config, sweep_config, sweep_family, sweep_rows
from .geometry import (
    GeodesicSegment,
    UnitVec,
    angular_distance,
    antipode,
    crossing_point,
    general_position_check,
    great_circle_normal,
    point_on_arc,
    segments_cross,
    segments_cross_batch,
    spherical_angle,
)
from .measures import (
    circles4_measures,
    is_antipodally_symmetric,
    sample_measure,
    sample_uniform_sphere,
)
from .models import (
    AngleQuad,
    BlowupConfig,
    BlowupMetadata,
    CircleFamily,
    CrossingCensus,
    CrossingPrediction,
    CrossingType,
    DensityEstimate,
    MeasureSpec,
    Node,
    PatternGraph,
    RotationMode,
    Symmetrized,
    TriangleCensus,
    TrianglePrediction,
    UniformSphere,
    Violation,
    ViolationKind,
    VonMisesFisher,
    parse_measure_spec,
)
from .rng import RngStream
from .theory import (
    angle_sum_ok,
    cnn_angle_pairs,
    exact_node_pair_total,
    expected_random_crossings,
    finite_cro,
    grid_extrema,
    predicted_cnn_from_geometry,
    predicted_cro,
    predicted_crossing_census,
    predicted_triangle_census,
    t_k3_bounds,
    t_k3_formula,
)

__all__ = [
    "AngleQuad",
    "BipartiteDrawing",
    "BlowupConfig",
    "BlowupMetadata",
    "CensusOverflow",
    "CircleFamily",
    "ConfigurationNotCanonical",
    "CrossingCensus",
    "CrossingGraph",
    "CrossingPrediction",
    "CrossingType",
    "DegenerateConfiguration",
    "DegenerateSegment",
    "DensityEstimate",
    "DomainError",
    "ExperimentConfig",
    "GeneralPositionViolation",
    "GeodesicCrossingsError",
    "GeodesicSegment",
    "GeometryError",
    "InvalidSpec",
    "MeasureSpec",
    "Node",
    "OddSize",
    "PatternGraph",
    "RngStream",
    "RotationMode",
    "Symmetrized",
    "TooManyRejections",
    "TriangleCensus",
    "TrianglePrediction",
    "UniformSphere",
    "UnitVec",
    "UnsupportedPattern",
    "Violation",
    "ViolationKind",
    "VonMisesFisher",
    "angle_sum_ok",
    "angular_distance",
    "antipodal_drawing",
    "antipode",
    "base_angles",
    "blowup_drawing",
    "blowup_tolerance",
    "build_crossing_graph",
    "canonicalize",
    "circles4_measures",
    "classify_crossing",
    "cnn_angle_pairs",
    "convergence_report",
    "count_crossings",
    "crossing_census",
    "crossing_point",
    "estimate_pH",
    "estimate_tH_vertex_sampling",
    "exact_node_pair_total",
    "expected_random_crossings",
    "finite_cro",
    "general_position_check",
    "golden_offsets",
    "great_circle_normal",
    "grid_extrema",
    "hom_count_small",
    "is_antipodally_symmetric",
    "parse_measure_spec",
    "point_on_arc",
    "predicted_cnn_from_geometry",
    "predicted_cro",
    "predicted_crossing_census",
    "predicted_triangle_census",
    "random_antipodal_drawing",
    "random_bipartite_drawing",
    "random_blowup_config",
    "sample_measure",
    "sample_uniform_sphere",
    "segments_cross",
    "segments_cross_batch",
    "spherical_angle",
    "suitable_rotation_offsets",
    "sweep_config",
    "sweep_family",
    "sweep_rows",
    "t_exact",
    "t_k3_bounds",
    "t_k3_formula",
    "triangle_census",
    "zarankiewicz",
]

__version__ = "0.1.0"
