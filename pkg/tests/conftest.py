from pathlib import Path

import pytest

from ontosim import SimilarityParams, build_ontology, load_catalog, parse_edge_list

FIXTURES = Path(__file__).parent / "fixtures"

# four-node toy graph used across the suite: b -> a -> r and c -> r
TOY_TERMS = ["r", "a", "b", "c"]
TOY_EDGES = [("a", "r"), ("b", "a"), ("c", "r")]

# hand-derived expected values for alpha=7.9, beta=3.9 (checked against the
# DFS oracle in test_similarity before anything trusts them)
SIM_B_TO_C = 3 / 22.7
SIM_C_TO_B = 2 / 17.7
SIM_A_TO_B = 2 / 5.9
SIM_B_TO_A = 3 / 10.9
SIM_BC_MEAN = (SIM_B_TO_C + SIM_C_TO_B) / 2
SIM_AC_MEAN = 2 / 13.8
DOSS_TOY = (SIM_AC_MEAN + SIM_BC_MEAN) / 2


@pytest.fixture
def toy_graph():
    return build_ontology(TOY_TERMS, TOY_EDGES)


@pytest.fixture
def default_params():
    return SimilarityParams()


@pytest.fixture
def toy_catalog():
    with open(FIXTURES / "toy_catalog.json", encoding="utf-8") as fh:
        return load_catalog(fh)


@pytest.fixture(scope="session")
def healthcare_catalog():
    with open(FIXTURES / "healthcare_catalog.json", encoding="utf-8") as fh:
        return load_catalog(fh)


@pytest.fixture(scope="session")
def healthcare_graph():
    with open(FIXTURES / "healthcare_edges.tsv", encoding="utf-8") as fh:
        terms, edges, _ = parse_edge_list(fh)
    return build_ontology(terms, edges)
