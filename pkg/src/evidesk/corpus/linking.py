"""Molecule linking: which registry entries does a document mention."""

from __future__ import annotations

import re

from evidesk.corpus.records import DocumentRecord, MoleculeRegistry
from evidesk.errors import UnlinkedDocument
from evidesk.words import normalize

# A name match must not sit inside a larger alphanumeric run, otherwise the
# id "RX-10" would fire on "RX-105".
_BOUNDARY = r"(?<![0-9A-Za-z_]){}(?![0-9A-Za-z_])"


def _name_pattern(name: str) -> re.Pattern:
    return re.compile(_BOUNDARY.format(re.escape(normalize(name).casefold())))


def link_molecules(record: DocumentRecord, registry: MoleculeRegistry) -> set[str]:
    """Return canonical ids of every molecule named in the document.

    Title, keywords, and body all count as mention surfaces. Matching is
    case-insensitive and boundary-aware. A document naming no registered
    molecule raises UnlinkedDocument; ingestion quarantines it.
    """
    haystack = normalize(
        " ".join([record.title, " ".join(record.keywords), record.body])
    ).casefold()
    linked: set[str] = set()
    for entry in registry.entries:
        for name in entry.all_names():
            if _name_pattern(name).search(haystack):
                linked.add(entry.molecule_id)
                break
    if not linked:
        raise UnlinkedDocument(record.doc_id)
    return linked
