"""Phase-plane shooting for clines of indefinite-weight Neumann problems."""

from ._core import (
    BlowupError,
    BracketLostError,
    Cline,
    ClineSearch,
    ComparisonReport,
    ConfigError,
    ConjectureReport,
    FStarReport,
    IntegratorConfig,
    NamedInstance,
    Nonlinearity,
    Problem,
    StepWeight,
    build_gamma,
    check_f_star,
    compare,
    find_all_clines,
    integrate,
    poincare_map,
    proposition_1,
    proposition_2,
    remark_instances,
    validate_conjecture_hypotheses,
    __version__,
)

__all__ = [
    "BlowupError",
    "BracketLostError",
    "Cline",
    "ClineSearch",
    "ComparisonReport",
    "ConfigError",
    "ConjectureReport",
    "FStarReport",
    "IntegratorConfig",
    "NamedInstance",
    "Nonlinearity",
    "Problem",
    "StepWeight",
    "build_gamma",
    "check_f_star",
    "compare",
    "find_all_clines",
    "integrate",
    "poincare_map",
    "proposition_1",
    "proposition_2",
    "remark_instances",
    "validate_conjecture_hypotheses",
    "__version__",
]
