"""Exception types shared across the package."""


class OntosimError(Exception):
    """Base class for every error raised by this package."""


class DuplicateTermId(OntosimError):
    def __init__(self, term_id: str):
        super().__init__(f"duplicate term id: {term_id!r}")
        self.term_id = term_id


class DanglingEdgeEndpoint(OntosimError):
    """An is-a edge references a term id that was never declared."""

    def __init__(self, endpoints):
        self.endpoints = tuple(endpoints)
        listed = ", ".join(repr(e) for e in self.endpoints)
        super().__init__(f"edge endpoint(s) not declared as terms: {listed}")


class CycleDetected(OntosimError):
    """The is-a graph contains a directed cycle; ``cycle`` is one closed path."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("is-a cycle detected: " + " -> ".join(self.cycle))


class UnknownTerm(OntosimError):
    """One or more term ids are not present in the ontology."""

    def __init__(self, *term_ids: str):
        self.term_ids = tuple(term_ids)
        listed = ", ".join(repr(t) for t in self.term_ids)
        super().__init__(f"unknown term id(s): {listed}")


class ParseError(OntosimError):
    """Base for input-format errors; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedLine(ParseError):
    pass


class MalformedStanza(ParseError):
    pass


class EmptyInput(ParseError):
    pass


class SchemaViolation(OntosimError):
    """Catalog JSON does not conform to the expected schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DuplicateDatasetId(SchemaViolation):
    pass


class DuplicateFeatureName(SchemaViolation):
    pass


class UnknownCategory(SchemaViolation):
    pass


class UnknownDataset(OntosimError):
    def __init__(self, dataset_id: str):
        super().__init__(f"unknown dataset id: {dataset_id!r}")
        self.dataset_id = dataset_id


class EmptyTermSet(OntosimError):
    """A dataset has no annotated features, so set-based similarity is undefined."""

    def __init__(self, dataset_id: str):
        super().__init__(f"dataset {dataset_id!r} has no annotated terms")
        self.dataset_id = dataset_id


class EmptyTermList(OntosimError):
    def __init__(self):
        super().__init__("term list is empty after deduplication")
