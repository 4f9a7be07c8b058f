"""Turn dangling Java snippets into compilable, well-formed method declarations."""

from .apize import apize
from .catalog import TypeCatalog, default_catalog, load_catalog
from .clones import alpha_rename, type3_containment
from .evaluate import EvalReport, ast_diff_count, evaluate_pair, jaccard_distance, return_equivalence
from .model import ApiDraft, ApizationResult, Diagnostic
from .naming import SoPage, generate_method_name
from .resolver import analyze
from .units import render_unit

__all__ = [
    "ApiDraft", "ApizationResult", "Diagnostic", "EvalReport", "SoPage", "TypeCatalog",
    "alpha_rename", "analyze", "apize", "ast_diff_count", "default_catalog", "evaluate_pair",
    "generate_method_name", "jaccard_distance", "load_catalog", "render_unit",
    "return_equivalence", "type3_containment",
]
