"""Sequence sanitization toolkit.

Conceal every occurrence of a set of sensitive length-k patterns in a
sequence while provably preserving the order and frequency of all other
length-k patterns, then optionally rewrite the separators the construction
leaves behind.  A second entry point produces the sanitized sequence closest
in edit distance to the original.
"""

from .core import (
    SEPARATOR,
    Alphabet,
    SanitizationInstance,
    build_instance,
    contains_sensitive,
    kmer_counts,
    overlap_chains,
)
from .errors import (
    BadK,
    BadPosition,
    BlockTooShort,
    BudgetExceeded,
    Infeasible,
    NoNonSensitive,
    OutOfBounds,
    SanitizationError,
    SeparatorInInput,
    UndefinedWhenZero,
)
from .etfs import MatchResult, SanRegex, approx_regex_match, build_regex, etfs_sanitize, fallback_regex
from .mcsr import (
    CostModel,
    GhostCandidateSet,
    ImplausibleSet,
    McsrResult,
    MckElement,
    MckInstance,
    build_mck,
    candidate_ghosts,
    context_string,
    implausible_set,
    mcsr_sanitize,
    solve_mck,
    uniform_cost_model,
    z_score,
)
from .metrics import (
    MetricsReport,
    VerifyResult,
    ba_sanitize,
    distortion,
    edit_distance,
    edre,
    lost_ghost,
    verify,
    verify_levels,
)
from .oracles import OracleBudget, oracle_fo_ssm, oracle_mck, oracle_min_etfs, oracle_min_tfs
from .pfs import RankPair, fo_ssm, pfs_sanitize, rank_blocks, split_blocks
from .tfs import CompactTfs, Interval, Separator, expand, tfs_compact, tfs_sanitize

__version__ = "0.1.0"

__all__ = [
    "SEPARATOR",
    "Alphabet",
    "SanitizationInstance",
    "build_instance",
    "contains_sensitive",
    "kmer_counts",
    "overlap_chains",
    "tfs_sanitize",
    "tfs_compact",
    "expand",
    "CompactTfs",
    "Interval",
    "Separator",
    "pfs_sanitize",
    "split_blocks",
    "rank_blocks",
    "fo_ssm",
    "RankPair",
    "mcsr_sanitize",
    "candidate_ghosts",
    "context_string",
    "build_mck",
    "solve_mck",
    "z_score",
    "implausible_set",
    "CostModel",
    "uniform_cost_model",
    "GhostCandidateSet",
    "ImplausibleSet",
    "MckElement",
    "MckInstance",
    "McsrResult",
    "etfs_sanitize",
    "build_regex",
    "fallback_regex",
    "approx_regex_match",
    "SanRegex",
    "MatchResult",
    "ba_sanitize",
    "distortion",
    "lost_ghost",
    "edit_distance",
    "edre",
    "verify",
    "verify_levels",
    "VerifyResult",
    "MetricsReport",
    "oracle_min_tfs",
    "oracle_min_etfs",
    "oracle_mck",
    "oracle_fo_ssm",
    "OracleBudget",
    "SanitizationError",
    "SeparatorInInput",
    "BadK",
    "BadPosition",
    "BlockTooShort",
    "OutOfBounds",
    "NoNonSensitive",
    "Infeasible",
    "UndefinedWhenZero",
    "BudgetExceeded",
]
