"""Parsers for ontology interchange formats.

Three formats are supported:

* edge list: TSV with two columns ``child_id<TAB>parent_id``; ``#`` starts a
  comment line and blank lines are skipped
* labels: TSV ``id<TAB>label[<TAB>synonym]*``
* OBO subset: ``[Term]`` stanzas with ``id:``, ``name:``, ``synonym:`` and
  ``is_a:`` keys; obsolete stanzas are skipped with a warning, non-taxonomic
  ``relationship:`` lines are counted but ignored, every other key is ignored

All parsers are pure single-pass functions over an iterable of lines, accept
LF or CRLF endings, and trim surrounding whitespace from fields (internal
spaces are preserved).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import EmptyInput, MalformedLine, MalformedStanza

TermTriple = tuple[str, str | None, tuple[str, ...]]


@dataclass
class ParseReport:
    """Counts of records actually emitted plus non-fatal warnings."""

    term_count: int = 0
    edge_count: int = 0
    ignored_relation_count: int = 0
    warnings: list[tuple[int, str]] = field(default_factory=list)


def parse_edge_list(lines: Iterable[str]) -> tuple[list[str], list[tuple[str, str]], ParseReport]:
    """Parse ``child<TAB>parent`` rows; terms are the union of endpoints."""
    terms: dict[str, None] = {}
    edges: list[tuple[str, str]] = []
    report = ParseReport()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise MalformedLine(f"expected child<TAB>parent, got {line!r}", line=lineno)
        child, parent = fields
        terms.setdefault(child)
        terms.setdefault(parent)
        edges.append((child, parent))
    if not edges:
        raise EmptyInput("no edges found in edge-list input")
    report.term_count = len(terms)
    report.edge_count = len(edges)
    return list(terms), edges, report


def write_edge_list(edges: Iterable[tuple[str, str]], stream: IO[str]) -> None:
    for child, parent in edges:
        stream.write(f"{child}\t{parent}\n")


def parse_labels(lines: Iterable[str]) -> tuple[dict[str, tuple[str, tuple[str, ...]]], ParseReport]:
    """Parse ``id<TAB>label[<TAB>synonym]*`` rows into a label map.

    A later entry for an already-seen id replaces the earlier one and is
    recorded as a warning in the report.
    """
    labels: dict[str, tuple[str, tuple[str, ...]]] = {}
    report = ParseReport()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) < 2 or not fields[0] or not fields[1]:
            raise MalformedLine(f"expected id<TAB>label[<TAB>synonym]*, got {line!r}", line=lineno)
        if any(not f for f in fields[2:]):
            raise MalformedLine("empty synonym field", line=lineno)
        term_id, label, *syns = fields
        if term_id in labels:
            report.warnings.append((lineno, f"duplicate label entry for {term_id}; keeping the later one"))
        labels[term_id] = (label, tuple(syns))
    report.term_count = len(labels)
    return labels, report


def parse_obo_subset(lines: Iterable[str]) -> tuple[list[TermTriple], list[tuple[str, str]], ParseReport]:
    """Parse the OBO subset described in the module docstring.

    ``is_a`` targets that never get their own stanza are emitted as bare
    terms (with a warning) so that no edge references an undeclared term.
    """
    terms: list[TermTriple] = []
    edges: list[tuple[str, str]] = []
    report = ParseReport()
    declared: set[str] = set()
    referenced: dict[str, int] = {}

    stanza: dict | None = None

    def flush() -> None:
        nonlocal stanza
        if stanza is None:
            return
        if stanza["id"] is None:
            raise MalformedStanza("[Term] stanza has no id:", line=stanza["start"])
        if stanza["obsolete"]:
            report.warnings.append((stanza["start"], f"skipped obsolete term {stanza['id']}"))
        else:
            terms.append((stanza["id"], stanza["name"], tuple(stanza["synonyms"])))
            declared.add(stanza["id"])
            for target, lineno in stanza["is_a"]:
                edges.append((stanza["id"], target))
                referenced.setdefault(target, lineno)
        stanza = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n").strip()
        if line.startswith("!"):
            continue
        if line.startswith("["):
            flush()
            if line == "[Term]":
                stanza = {
                    "start": lineno,
                    "id": None,
                    "name": None,
                    "synonyms": [],
                    "is_a": [],
                    "obsolete": False,
                }
            continue
        if not line or stanza is None:
            # blank line, document header, or body of a skipped stanza type
            continue
        if ":" not in line:
            raise MalformedLine(f"expected key: value, got {line!r}", line=lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "id":
            if not value:
                raise MalformedStanza("empty id:", line=lineno)
            stanza["id"] = value
        elif key == "name":
            stanza["name"] = value or None
        elif key == "synonym":
            first = value.find('"')
            second = value.find('"', first + 1)
            if first < 0 or second < 0:
                raise MalformedLine("synonym text must be enclosed in double quotes", line=lineno)
            text = value[first + 1 : second]
            if text:
                stanza["synonyms"].append(text)
        elif key == "is_a":
            target = value.split("!", 1)[0].strip()
            if not target:
                raise MalformedLine("is_a without a target id", line=lineno)
            stanza["is_a"].append((target, lineno))
        elif key == "is_obsolete":
            stanza["obsolete"] = value.lower() == "true"
        elif key == "relationship":
            report.ignored_relation_count += 1
        # every other OBO key is ignored
    flush()

    for target, lineno in referenced.items():
        if target not in declared:
            terms.append((target, None, ()))
            declared.add(target)
            report.warnings.append((lineno, f"parent {target} referenced but not defined; added as bare term"))

    if not terms:
        raise EmptyInput("no [Term] stanzas found")
    report.term_count = len(terms)
    report.edge_count = len(edges)
    return terms, edges, report
