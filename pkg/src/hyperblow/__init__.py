"""Spectral radii of blow-ups of uniform hypergraphs, with exhaustive extremal checks."""

from .closed_form import BalancedSplit, SunflowerBlowup, balanced_product, scaling_rho, sunflower_rho
from .extremal import (
    ExtremalReport,
    ObjectiveScan,
    brute_force_extremal,
    enumerate_compositions,
    maximize_f,
    minimize_R,
    scan_eq14,
    shift_test,
    verify_theorem5,
    verify_theorem9,
    verify_theorem41,
)
from .hypergraph import (
    BlowupSpec,
    HypergraphError,
    SunflowerParams,
    UniformHypergraph,
    VertexClassMap,
    blow_up,
    complete_hypergraph,
    is_connected,
    link_set,
    parse_hypergraph,
    read_hypergraph,
    sunflower,
    turan_hypergraph,
    write_hypergraph,
)
from .spectral import (
    ConvergenceError,
    QuotientSystem,
    SpectralResult,
    apply_adjacency,
    quotient_spectral_radius,
    rayleigh_value,
    residual,
    spectral_radius,
)

__version__ = "0.1.0"
