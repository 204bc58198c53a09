"""Section-aware sliding-window chunking."""

from __future__ import annotations

from dataclasses import dataclass

from evidesk.corpus.records import DocumentRecord
from evidesk.corpus.sections import SectionTree, content_words, parse_sections
from evidesk.errors import InvalidChunkConfig

PATH_SEP = " > "


@dataclass
class Chunk:
    doc_id: str
    section_path: tuple[str, ...]
    start_word: int
    end_word: int
    text: str
    metadata_header: str = ""

    @property
    def word_count(self) -> int:
        return self.end_word - self.start_word

    @property
    def chunk_id(self) -> str:
        path = PATH_SEP.join(self.section_path)
        return f"{self.doc_id}::{path}::{self.start_word}-{self.end_word}"

    def indexed_text(self) -> str:
        """Text as seen by the indexes: metadata header plus chunk words.

        The header is prepended for retrieval only; it never counts toward
        the window budget.
        """
        if self.metadata_header:
            return self.metadata_header + "\n" + self.text
        return self.text

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "doc_id": self.doc_id,
            "section_path": list(self.section_path),
            "start_word": self.start_word,
            "end_word": self.end_word,
            "word_count": self.word_count,
            "text": self.text,
            "metadata_header": self.metadata_header,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Chunk":
        return cls(
            doc_id=raw["doc_id"],
            section_path=tuple(raw["section_path"]),
            start_word=raw["start_word"],
            end_word=raw["end_word"],
            text=raw["text"],
            metadata_header=raw.get("metadata_header", ""),
        )


def chunk_sections(
    tree: SectionTree,
    body: str,
    doc_id: str = "",
    size: int = 512,
    overlap: int = 64,
) -> list[Chunk]:
    """Slide a word window over each section's own text.

    Windows advance by size - overlap and never cross a section boundary.
    Every window except a region's last holds exactly `size` words; the last
    one simply runs to the region's end, so it may be shorter but is never
    empty, and consecutive windows within a region share exactly `overlap`
    words.
    """
    if overlap < 0 or size <= 0 or overlap >= size:
        raise InvalidChunkConfig(f"size={size} overlap={overlap}")
    words = content_words(body)
    step = size - overlap
    chunks: list[Chunk] = []
    for path, lo, hi in tree.regions():
        if hi <= lo:
            continue
        start = lo
        while True:
            end = min(start + size, hi)
            chunks.append(
                Chunk(
                    doc_id=doc_id,
                    section_path=path,
                    start_word=start,
                    end_word=end,
                    text=" ".join(words[start:end]),
                )
            )
            if start + size >= hi:
                break
            start += step
    return chunks


def render_metadata_header(record: DocumentRecord) -> str:
    """One-line provenance banner carried by every chunk of a document."""
    molecules = ",".join(sorted(record.molecule_ids)) or "unlinked"
    date = record.date or "undated"
    return f"[{record.title} | {molecules} | {record.study_stage} | {date}]"


def chunk_document(record: DocumentRecord, size: int = 512, overlap: int = 64) -> list[Chunk]:
    """Parse, chunk, and stamp metadata headers for one document."""
    tree = parse_sections(record.body)
    chunks = chunk_sections(tree, record.body, doc_id=record.doc_id, size=size, overlap=overlap)
    header = render_metadata_header(record)
    for chunk in chunks:
        chunk.metadata_header = header
    return chunks
