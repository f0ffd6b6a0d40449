"""interset: cross-platform developer interest linking and similarity.

The pipeline links accounts across two platforms by email hash, extracts
per-developer tag interest sets from activity traces, and scores
cross-platform, activity-pair, and co-participation interest similarity,
with population-level reports and plot-ready files.
"""

from .identity import (
    AmbiguousMatch,
    LinkedDeveloper,
    email_md5,
    link_identities,
    normalize_email,
)
from .index import (
    Csr,
    IndexBundle,
    Interner,
    ParticipationIndex,
    TagItemIndex,
    build_indices,
    csr_from_pairs,
    transpose_pairs,
)
from .ingest import ALL_KINDS, Dataset, DatasetError, DatasetPaths, load_dataset, write_dataset
from .interests import (
    DeveloperInterests,
    ItemCatalog,
    TagVocabulary,
    developer_interests,
    extract_item_interests,
    match_tag,
    normalize_tag,
    question_interests,
    repo_interests,
    tokenize,
)
from .kernels import available_backends, get_backend, set_backend
from .metrics import (
    CO_KINDS,
    GH_PAIR_KINDS,
    METRICS,
    SO_PAIR_KINDS,
    CoParticipationScore,
    CrossPlatformScore,
    PairScore,
    ScoreEngine,
    format_value,
    pair_metric,
    co_metric,
    select_metrics,
    write_scores_csv,
)
from .report import (
    DistributionSummary,
    read_scores_csv,
    summarize,
    summarize_scores,
    write_plotdata,
    write_summary_json,
)
from .synthgen import GenSpec, brute_force_scores, generate, word_boundary_match

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "AmbiguousMatch",
    "CO_KINDS",
    "CoParticipationScore",
    "CrossPlatformScore",
    "Csr",
    "Dataset",
    "DatasetError",
    "DatasetPaths",
    "DeveloperInterests",
    "DistributionSummary",
    "GH_PAIR_KINDS",
    "GenSpec",
    "IndexBundle",
    "Interner",
    "ItemCatalog",
    "LinkedDeveloper",
    "METRICS",
    "PairScore",
    "ParticipationIndex",
    "SO_PAIR_KINDS",
    "ScoreEngine",
    "TagItemIndex",
    "TagVocabulary",
    "available_backends",
    "brute_force_scores",
    "build_indices",
    "co_metric",
    "csr_from_pairs",
    "developer_interests",
    "email_md5",
    "extract_item_interests",
    "format_value",
    "generate",
    "get_backend",
    "link_identities",
    "load_dataset",
    "match_tag",
    "normalize_email",
    "normalize_tag",
    "pair_metric",
    "question_interests",
    "read_scores_csv",
    "repo_interests",
    "select_metrics",
    "set_backend",
    "summarize",
    "summarize_scores",
    "tokenize",
    "transpose_pairs",
    "word_boundary_match",
    "write_dataset",
    "write_plotdata",
    "write_scores_csv",
    "write_summary_json",
]
