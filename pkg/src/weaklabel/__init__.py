"""Weak application-domain labelling of source files, aggregated to packages and projects."""

from importlib import resources
from pathlib import Path

from .aggregation import (
    AggregationConfig,
    NodeAnnotation,
    aggregate_package,
    aggregate_project,
    assign_display_label,
    project_top_k,
)
from .corpus import (
    GroundTruth,
    LabelVocabulary,
    ProjectRef,
    SourceFileRef,
    StructureGraph,
    build_structure_graph,
    discover_sources,
    load_ground_truth,
    load_vocabulary,
)
from .embeddings import EmbeddingTable, TextVector, cosine, embed_text, load_embedding_table
from .ensemble import EnsembleConfig, cascade, vote
from .evaluation import (
    agreement,
    cohens_kappa,
    package_cohesion,
    polarity,
    recall_at_k,
    unannotated_fraction,
)
from .keywords import KeywordTable, ScoredKeyword, build_keyword_table, extract_project_keywords
from .labelling import (
    FilterConfig,
    LabelDistribution,
    TransformConfig,
    filter_annotation,
    jsd,
    keyword_lf,
    random_lf,
    similarity_lf,
    transform,
)
from .lexing import Document, extract_identifiers, file_name_document, identifiers_document, split_identifier

__version__ = "0.1.0"


def minicorpus_path() -> Path:
    """Directory of the bundled three-project demo corpus (contains ``config.yaml``)."""
    return Path(str(resources.files("weaklabel").joinpath("data/minicorpus")))
