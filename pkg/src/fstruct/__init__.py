"""Exact symbolic analysis of polynomial F-structures on coordinate charts."""

from fstruct.chart import ChartManifold, VectorField, coordinate_frame, lie_bracket
from fstruct.checks import IdentityCheck, InconsistencyError, SuiteResult
from fstruct.cr import (ComplexExpr, ComplexFrameBundle, ComplexVectorField, build_H, check_cr,
                        check_disjointness, check_involutive, complex_structure_identities, cr_analysis)
from fstruct.expr import Expr, ExprError, ParseError, differentiate, parse_expr
from fstruct.fstructure import (Distribution, FStructure, StructureError, check_decomposition,
                                check_projector_identities, generic_rank, verify_fhat,
                                verify_structure_equation)
from fstruct.generator import GeneratorSpec, generate, generate_instance, non_involutive_instance
from fstruct.integrability import (analyze, classify, decide_both, decide_complete, decide_Dl,
                                   decide_Dm, decide_full, decide_partial, frobenius_crosscheck)
from fstruct.manifest import Manifest, ManifestError, builtin_example, load_manifest
from fstruct.nijenhuis import (integrable_consequences, nijenhuis_apply, nijenhuis_identity_suite,
                               nijenhuis_of)
from fstruct.report import run_report
from fstruct.tensor import TensorField11

__all__ = [
    "ChartManifold", "VectorField", "coordinate_frame", "lie_bracket",
    "IdentityCheck", "InconsistencyError", "SuiteResult",
    "ComplexExpr", "ComplexFrameBundle", "ComplexVectorField", "build_H", "check_cr",
    "check_disjointness", "check_involutive", "complex_structure_identities", "cr_analysis",
    "Expr", "ExprError", "ParseError", "differentiate", "parse_expr",
    "Distribution", "FStructure", "StructureError", "check_decomposition",
    "check_projector_identities", "generic_rank", "verify_fhat", "verify_structure_equation",
    "GeneratorSpec", "generate", "generate_instance", "non_involutive_instance",
    "analyze", "classify", "decide_both", "decide_complete", "decide_Dl", "decide_Dm",
    "decide_full", "decide_partial", "frobenius_crosscheck",
    "Manifest", "ManifestError", "builtin_example", "load_manifest",
    "integrable_consequences", "nijenhuis_apply", "nijenhuis_identity_suite", "nijenhuis_of",
    "run_report", "TensorField11",
]
