"""Dataset-to-dataset similarity over annotated term sets (DOSS).

For every term of the source dataset, take the best similarity against the
reference dataset's terms, then aggregate those per-term maxima with a
summarising function. The measure is directional: a small dataset whose
terms are all covered by a large reference scores 1 against it, while the
reverse direction is typically below 1.
"""

from __future__ import annotations

import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Callable, Mapping, Sequence

from . import matrixio
from .catalog import AnnotationCatalog, term_set
from .errors import EmptyTermSet, UnknownTerm
from .ontology import OntologyGraph
from .similarity import SimilarityParams, sim_rm

AGGREGATORS: dict[str, Callable[[Sequence[float]], float]] = {
    "mean": statistics.fmean,
    "median": statistics.median,
    "min": min,
    "max": max,
}
DEFAULT_AGGREGATOR = "mean"


def get_aggregator(name: str) -> Callable[[Sequence[float]], float]:
    try:
        return AGGREGATORS[name]
    except KeyError:
        raise ValueError(
            f"aggregator must be one of {', '.join(AGGREGATORS)}; got {name!r}"
        ) from None


@dataclass(frozen=True)
class BestMatch:
    source_term: str
    best_term: str
    similarity: float


@dataclass(frozen=True)
class DossResult:
    value: float
    source_id: str
    reference_id: str
    aggregator: str
    symmetrization: str
    best_matches: tuple[BestMatch, ...]

    def to_json_dict(self) -> dict:
        return {
            "direction": {"source": self.source_id, "reference": self.reference_id},
            "aggregator": self.aggregator,
            "symmetrization": self.symmetrization,
            "value": round(self.value, 6),
            "best_matches": [
                {
                    "source_term": m.source_term,
                    "best_match": m.best_term,
                    "similarity": round(m.similarity, 6),
                }
                for m in self.best_matches
            ],
        }


def doss(
    graph: OntologyGraph,
    params: SimilarityParams,
    catalog: AnnotationCatalog,
    source_id: str,
    reference_id: str,
    aggregator: str = DEFAULT_AGGREGATOR,
) -> DossResult:
    """Similarity of the source dataset's term set relative to the reference's.

    One best match is recorded per source term (ties broken by ascending
    reference term id); the value is the aggregator applied to those
    per-term maxima. Empty term sets make the measure undefined and raise
    EmptyTermSet naming the offending dataset.
    """
    h = get_aggregator(aggregator)
    source_terms = sorted(term_set(catalog, source_id))
    reference_terms = sorted(term_set(catalog, reference_id))
    if not source_terms:
        raise EmptyTermSet(source_id)
    if not reference_terms:
        raise EmptyTermSet(reference_id)
    unknown = sorted(t for t in {*source_terms, *reference_terms} if t not in graph)
    if unknown:
        raise UnknownTerm(*unknown)

    matches: list[BestMatch] = []
    for source in source_terms:
        best_term = reference_terms[0]
        best_sim = sim_rm(graph, params, source, best_term)
        for candidate in reference_terms[1:]:
            score = sim_rm(graph, params, source, candidate)
            if score > best_sim:
                best_sim = score
                best_term = candidate
        matches.append(BestMatch(source, best_term, best_sim))
    value = h([m.similarity for m in matches])
    return DossResult(
        value=value,
        source_id=source_id,
        reference_id=reference_id,
        aggregator=aggregator,
        symmetrization=params.symmetrization,
        best_matches=tuple(matches),
    )


@dataclass(frozen=True)
class DossMatrix:
    """Directional matrix: values[i][j] scores dataset i against reference j."""

    dataset_ids: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]
    aggregator: str
    symmetrization: str
    excluded: tuple[str, ...]

    def to_csv(self, stream: IO[str], metadata: Mapping[str, object] | None = None) -> None:
        matrixio.write_matrix_csv(stream, self.dataset_ids, self.values, metadata)

    def to_json_dict(self) -> dict:
        return {
            "dataset_ids": list(self.dataset_ids),
            "values": [list(row) for row in self.values],
            "aggregator": self.aggregator,
            "symmetrization": self.symmetrization,
            "excluded": list(self.excluded),
        }


def doss_matrix(
    graph: OntologyGraph,
    params: SimilarityParams,
    catalog: AnnotationCatalog,
    aggregator: str = DEFAULT_AGGREGATOR,
    workers: int = 1,
) -> DossMatrix:
    """All ordered dataset pairs. Datasets without annotated terms are not
    fatal here; they are left out and reported in ``excluded``."""
    get_aggregator(aggregator)
    included: list[str] = []
    excluded: list[str] = []
    for ds in catalog.datasets:
        (included if term_set(catalog, ds.id) else excluded).append(ds.id)
    all_terms = sorted({t for d in included for t in term_set(catalog, d)})
    unknown = [t for t in all_terms if t not in graph]
    if unknown:
        raise UnknownTerm(*unknown)

    def row(i: int) -> tuple[float, ...]:
        return tuple(
            doss(graph, params, catalog, included[i], reference, aggregator).value
            for reference in included
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = tuple(pool.map(row, range(len(included))))
    else:
        values = tuple(row(i) for i in range(len(included)))
    return DossMatrix(tuple(included), values, aggregator, params.symmetrization, tuple(excluded))


def shared_term_count(catalog: AnnotationCatalog, d1: str, d2: str) -> int:
    return len(term_set(catalog, d1) & term_set(catalog, d2))
