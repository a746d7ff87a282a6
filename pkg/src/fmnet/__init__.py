"""Strong dependency and conflict graphs for feature models.

The pipeline: parse a model (DIMACS CNF or the feature-model dialect),
classify features as core, dead or configurable via the formula backbone,
condition on each configurable feature to find what it strongly requires
and excludes, then study the resulting graphs with degree metrics and
corpus-level statistics. A model-enumeration oracle and a sampling
validator double-check every artifact.
"""

from .backbone import Backbone, compute_backbone
from .cnf import Clause, CnfFormula, emit_dimacs, normalize_clause, parse_dimacs
from .errors import (
    ConstraintError,
    DialectError,
    DimacsError,
    EnumerationLimitError,
    FmnetError,
    InputSyntaxError,
    VoidModelError,
)
from .export import export_graph, graphs_from_json
from .feature_model import FeatureModel, fm_to_cnf, parse_fm, parse_fm_to_cnf
from .metrics import (
    HistogramBin,
    ModelMetrics,
    NodeMetrics,
    Overlap,
    compute_model_metrics,
    compute_node_metrics,
    degree_distribution,
)
from .oracle import Discrepancy, ValidationReport, oracle_strong_relations, validate_model
from .sat import (
    SatEngine,
    SatOutcome,
    SolverLike,
    Status,
    enumerate_models,
    solve_under_assumptions,
)
from .stats import (
    Alternative,
    StatsSummary,
    WilcoxonResult,
    effect_label,
    median_and_coverage,
    spearman_rho,
    summarize_metric,
    wilcoxon_signed_rank,
)
from .strong_graphs import (
    FeatureClassification,
    StrongGraphs,
    StrongRelations,
    build_strong_graphs,
    compute_strong_graphs,
    extract_strong_relations,
)

__version__ = "0.1.0"

__all__ = [
    "Alternative",
    "Backbone",
    "Clause",
    "CnfFormula",
    "ConstraintError",
    "DialectError",
    "DimacsError",
    "Discrepancy",
    "EnumerationLimitError",
    "FeatureClassification",
    "FeatureModel",
    "FmnetError",
    "HistogramBin",
    "InputSyntaxError",
    "ModelMetrics",
    "NodeMetrics",
    "Overlap",
    "SatEngine",
    "SatOutcome",
    "SolverLike",
    "StatsSummary",
    "Status",
    "StrongGraphs",
    "StrongRelations",
    "ValidationReport",
    "VoidModelError",
    "WilcoxonResult",
    "build_strong_graphs",
    "compute_backbone",
    "compute_model_metrics",
    "compute_node_metrics",
    "compute_strong_graphs",
    "degree_distribution",
    "effect_label",
    "emit_dimacs",
    "enumerate_models",
    "export_graph",
    "extract_strong_relations",
    "fm_to_cnf",
    "graphs_from_json",
    "median_and_coverage",
    "normalize_clause",
    "oracle_strong_relations",
    "parse_dimacs",
    "parse_fm",
    "parse_fm_to_cnf",
    "solve_under_assumptions",
    "spearman_rho",
    "summarize_metric",
    "validate_model",
    "wilcoxon_signed_rank",
]
