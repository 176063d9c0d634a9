"""Pairwise-comparison decision engine with an elicitation service.

Build a three-layer hierarchy (goal, criteria, alternatives), judge element
pairs on the 1..9 scale, derive priority weights, check judgment consistency,
and synthesize a final ranking. Ships as a library, a CLI, and an HTTP
service backing the interactive judgment editor.
"""

from .core import (
    DecisionError,
    DecisionModel,
    Element,
    Hierarchy,
    Judgment,
    PairwiseMatrix,
    SCALE,
    build_matrix,
    hierarchy,
    judgment_from_token,
    render_token,
    validate_matrix,
)
from .engine import (
    ConsistencyReport,
    PriorityVector,
    column_sums,
    consistency,
    derive_priorities,
    eigen_priorities,
    lambda_max,
    normalize_columns,
)
from .model_io import (
    ModelDocument,
    load_model,
    load_nhs_model,
    nhs_fixture_path,
    parse_document,
    render_document,
    render_report,
    save_model,
)
from .session import (
    ElicitationSession,
    EvaluationSnapshot,
    create_session,
    evaluate_model,
    inconsistency_hotspots,
    session_from_model,
)
from .synthesis import (
    SensitivityReport,
    SynthesisResult,
    rank,
    synthesize,
    weight_sensitivity,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyReport",
    "DecisionError",
    "DecisionModel",
    "Element",
    "ElicitationSession",
    "EvaluationSnapshot",
    "Hierarchy",
    "Judgment",
    "ModelDocument",
    "PairwiseMatrix",
    "PriorityVector",
    "SCALE",
    "SensitivityReport",
    "SynthesisResult",
    "build_matrix",
    "column_sums",
    "consistency",
    "create_session",
    "derive_priorities",
    "eigen_priorities",
    "evaluate_model",
    "hierarchy",
    "inconsistency_hotspots",
    "judgment_from_token",
    "lambda_max",
    "load_model",
    "load_nhs_model",
    "nhs_fixture_path",
    "normalize_columns",
    "parse_document",
    "rank",
    "render_document",
    "render_report",
    "render_token",
    "save_model",
    "session_from_model",
    "synthesize",
    "validate_matrix",
    "weight_sensitivity",
]
