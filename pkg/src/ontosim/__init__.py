"""Ontology-backed semantic similarity for terms and annotated tabular datasets."""

from .catalog import (
    CATEGORIES,
    AnnotationCatalog,
    CoverageStats,
    DatasetCoverage,
    DatasetRecord,
    FeatureRecord,
    LabelMatch,
    TermUsage,
    catalog_from_dict,
    catalog_terms,
    coverage_stats,
    load_catalog,
    search_labels,
    term_frequency_report,
    term_set,
)
from .doss import (
    AGGREGATORS,
    DEFAULT_AGGREGATOR,
    BestMatch,
    DossMatrix,
    DossResult,
    doss,
    doss_matrix,
    get_aggregator,
    shared_term_count,
)
from .errors import (
    CycleDetected,
    DanglingEdgeEndpoint,
    DuplicateDatasetId,
    DuplicateFeatureName,
    DuplicateTermId,
    EmptyInput,
    EmptyTermList,
    EmptyTermSet,
    MalformedLine,
    MalformedStanza,
    OntosimError,
    ParseError,
    SchemaViolation,
    UnknownCategory,
    UnknownDataset,
    UnknownTerm,
)
from .ingest import (
    ParseReport,
    parse_edge_list,
    parse_labels,
    parse_obo_subset,
    write_edge_list,
)
from .ontology import OntologyGraph, TermId, build_ontology
from .similarity import (
    SYMMETRIZE_AS_PRINTED,
    SYMMETRIZE_MEAN,
    SYMMETRIZATIONS,
    SimilarityMatrix,
    SimilarityParams,
    distance,
    nearest_terms,
    pairwise_matrix,
    sim_rm,
    sim_rm_directed,
)

__version__ = "0.1.0"

__all__ = [
    "AGGREGATORS",
    "AnnotationCatalog",
    "BestMatch",
    "CATEGORIES",
    "CoverageStats",
    "CycleDetected",
    "DEFAULT_AGGREGATOR",
    "DanglingEdgeEndpoint",
    "DatasetCoverage",
    "DatasetRecord",
    "DossMatrix",
    "DossResult",
    "DuplicateDatasetId",
    "DuplicateFeatureName",
    "DuplicateTermId",
    "EmptyInput",
    "EmptyTermList",
    "EmptyTermSet",
    "FeatureRecord",
    "LabelMatch",
    "MalformedLine",
    "MalformedStanza",
    "OntologyGraph",
    "OntosimError",
    "ParseError",
    "ParseReport",
    "SYMMETRIZATIONS",
    "SYMMETRIZE_AS_PRINTED",
    "SYMMETRIZE_MEAN",
    "SchemaViolation",
    "SimilarityMatrix",
    "SimilarityParams",
    "TermId",
    "TermUsage",
    "UnknownCategory",
    "UnknownDataset",
    "UnknownTerm",
    "build_ontology",
    "catalog_from_dict",
    "catalog_terms",
    "coverage_stats",
    "distance",
    "doss",
    "doss_matrix",
    "get_aggregator",
    "load_catalog",
    "nearest_terms",
    "pairwise_matrix",
    "parse_edge_list",
    "parse_labels",
    "parse_obo_subset",
    "search_labels",
    "shared_term_count",
    "sim_rm",
    "sim_rm_directed",
    "term_frequency_report",
    "term_set",
    "write_edge_list",
]
