"""Ratio-model semantic similarity between ontology terms.

For terms t1, t2 with ancestor-set sizes theta(t) and shared-ancestor count
psi(t1, t2), the directed score is

    theta(t1) / (alpha * (theta(t1) - psi) + beta * (theta(t2) - psi) + theta(t1))

The denominator is never smaller than the numerator and never zero, so the
score lives in (0, 1] and equals 1 exactly when both ancestor sets coincide.
The directed form is asymmetric whenever alpha != beta, so the user-facing
measure defaults to averaging both directions; the raw directed form stays
selectable as the "as-printed" policy.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

from . import matrixio
from .errors import EmptyTermList, UnknownTerm
from .ontology import OntologyGraph, TermId

SYMMETRIZE_AS_PRINTED = "as-printed"
SYMMETRIZE_MEAN = "mean-of-directions"
SYMMETRIZATIONS = (SYMMETRIZE_AS_PRINTED, SYMMETRIZE_MEAN)


@dataclass(frozen=True)
class SimilarityParams:
    """Weights of the directed ratio measure plus the symmetrization policy."""

    alpha: float = 7.9
    beta: float = 3.9
    symmetrization: str = SYMMETRIZE_MEAN

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if self.symmetrization not in SYMMETRIZATIONS:
            raise ValueError(
                f"symmetrization must be one of {SYMMETRIZATIONS}, got {self.symmetrization!r}"
            )


def sim_rm_directed(graph: OntologyGraph, params: SimilarityParams, t1: TermId, t2: TermId) -> float:
    theta1 = graph.theta(t1)
    theta2 = graph.theta(t2)
    shared = graph.psi(t1, t2)
    denom = params.alpha * (theta1 - shared) + params.beta * (theta2 - shared) + theta1
    return theta1 / denom


def sim_rm(graph: OntologyGraph, params: SimilarityParams, t1: TermId, t2: TermId) -> float:
    """Similarity under the configured policy; symmetric under mean-of-directions."""
    if params.symmetrization == SYMMETRIZE_AS_PRINTED:
        return sim_rm_directed(graph, params, t1, t2)
    return (sim_rm_directed(graph, params, t1, t2) + sim_rm_directed(graph, params, t2, t1)) / 2.0


def distance(graph: OntologyGraph, params: SimilarityParams, t1: TermId, t2: TermId) -> float:
    return 1.0 - sim_rm(graph, params, t1, t2)


@dataclass(frozen=True)
class SimilarityMatrix:
    """Square matrix of pairwise scores with term ids as row/column labels."""

    terms: tuple[TermId, ...]
    values: tuple[tuple[float, ...], ...]

    def to_distance(self) -> "SimilarityMatrix":
        """Companion matrix with every cell replaced by 1 - value."""
        return SimilarityMatrix(
            self.terms,
            tuple(tuple(1.0 - cell for cell in row) for row in self.values),
        )

    def to_csv(self, stream: IO[str], metadata: Mapping[str, object] | None = None) -> None:
        matrixio.write_matrix_csv(stream, self.terms, self.values, metadata)

    def to_json_dict(self) -> dict:
        return {"terms": list(self.terms), "values": [list(row) for row in self.values]}

    @classmethod
    def from_csv(cls, lines: Iterable[str]) -> "SimilarityMatrix":
        labels, values = matrixio.read_matrix_csv(lines)
        return cls(labels, values)


def pairwise_matrix(
    graph: OntologyGraph,
    params: SimilarityParams,
    terms: Iterable[TermId],
    workers: int = 1,
) -> SimilarityMatrix:
    """All-pairs similarity over the given terms.

    Duplicates collapse to their first occurrence. Rows may be computed by a
    thread pool; results are assembled by row index, so the output is
    identical for any worker count.
    """
    ordered = list(dict.fromkeys(terms))
    if not ordered:
        raise EmptyTermList()
    unknown = [t for t in ordered if t not in graph]
    if unknown:
        raise UnknownTerm(*unknown)

    def row(i: int) -> tuple[float, ...]:
        t1 = ordered[i]
        return tuple(sim_rm(graph, params, t1, t2) for t2 in ordered)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = tuple(pool.map(row, range(len(ordered))))
    else:
        values = tuple(row(i) for i in range(len(ordered)))
    return SimilarityMatrix(tuple(ordered), values)


def nearest_terms(
    graph: OntologyGraph,
    params: SimilarityParams,
    query: TermId,
    candidates: Iterable[TermId],
    k: int,
) -> list[tuple[TermId, float]]:
    """Top-k candidates by similarity to the query, ties broken by ascending id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pool = sorted(set(candidates))
    unknown = [t for t in dict.fromkeys([query, *pool]) if t not in graph]
    if unknown:
        raise UnknownTerm(*unknown)
    scored = [(term, sim_rm(graph, params, query, term)) for term in pool]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]
