"""Desk-scale certification toolkit for high-temperature uniqueness of
quenched Gibbs fields on graphs of unbounded degree."""

from .graphs import (
    Animal,
    Graph,
    GraphError,
    SimplePath,
    Volume,
    animal_from_vertices,
    ball,
    ball_vertices,
    boundaries,
    build_graph,
    distance,
    path_animal,
)
from .enumeration import Caps, Enumeration, enumerate_animals, enumerate_simple_paths
from .temperedness import (
    GrowthFunction,
    RepulsivenessSpec,
    TemperednessReport,
    animal_average,
    check_repulsive,
    check_summability,
    check_tempered,
    g_log,
    g_tlogt,
    power_repulsion,
    randic_index,
    select_Nk,
    verify_counting_bounds,
    verify_separation_bound,
)
from .disorder import (
    DisorderSample,
    MomentExplosionError,
    NormDistribution,
    beta_star,
    constant,
    edge_kappa,
    exponential,
    half_normal,
    kappa_margin,
    mean_kappa,
    sample_disorder,
    uniform,
)
from .gibbs import (
    CapExceededError,
    SpinModel,
    VolumeEvaluator,
    boundary_gap,
    clock,
    compute_Q,
    dlr_consistency_check,
    hamiltonian,
    interval_grid,
    ising,
    log_partition,
    magnetization,
    verify_expansion_identity,
    verify_lemma27,
)
from .uniqueness import (
    UniquenessCertificate,
    certificate,
    decay_experiment,
    expected_gap_bound,
    geometric_tail,
)
from . import generators

__version__ = "0.1.0"
