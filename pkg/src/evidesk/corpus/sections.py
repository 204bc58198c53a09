"""Markdown-style section tree with word-offset spans.

Spans are measured in content words: heading lines contribute structure but
no words, so a node's span covers exactly the whitespace-separated words of
its own text plus its descendants' text. Word offsets index into the list
returned by content_words(), which both the parser and the chunker use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from evidesk.errors import EmptyDocument
from evidesk.words import normalize

_ATX_RE = re.compile(r"^(#{1,6})[ \t]+(.+?)[ \t]*$")
_SETEXT_H1_RE = re.compile(r"^=+[ \t]*$")
_SETEXT_H2_RE = re.compile(r"^-{2,}[ \t]*$")


@dataclass
class SectionNode:
    heading: str
    depth: int
    start: int
    end: int
    children: list["SectionNode"] = field(default_factory=list)

    def direct_region(self) -> tuple[int, int]:
        """Word span owned by this node's own text, excluding children.

        Plain text always follows its heading immediately, so the direct
        region runs from the node's start to its first child (or its end).
        """
        if self.children:
            return self.start, self.children[0].start
        return self.start, self.end


@dataclass
class SectionTree:
    roots: list[SectionNode]
    word_count: int

    def iter_nodes(self):
        stack = list(reversed(self.roots))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def regions(self) -> list[tuple[tuple[str, ...], int, int]]:
        """Direct content regions in document order, with heading paths."""
        out = []

        def walk(node: SectionNode, path: tuple[str, ...]):
            here = path + (node.heading,)
            lo, hi = node.direct_region()
            out.append((here, lo, hi))
            for child in node.children:
                walk(child, here)

        for root in self.roots:
            walk(root, ())
        return out


def _strip_atx(line: str) -> tuple[int, str] | None:
    m = _ATX_RE.match(line)
    if not m:
        return None
    title = m.group(2).rstrip()
    # Closing hash runs are decoration, not title text.
    stripped = re.sub(r"[ \t]+#+$", "", title).rstrip()
    if stripped:
        title = stripped
    if not title or title.strip("#") == "":
        return None
    return len(m.group(1)), title


def _normalize_setext(lines: list[str]) -> list[str]:
    """Rewrite setext headings to ATX so one grammar drives the parser."""
    out: list[str] = []
    for line in lines:
        prev = out[-1] if out else None
        prev_usable = (
            prev is not None
            and prev.strip() != ""
            and _strip_atx(prev) is None
            and not _SETEXT_H1_RE.match(prev)
            and not _SETEXT_H2_RE.match(prev)
        )
        if prev_usable and _SETEXT_H1_RE.match(line):
            out[-1] = "# " + prev.strip()
            continue
        if prev_usable and _SETEXT_H2_RE.match(line):
            out[-1] = "## " + prev.strip()
            continue
        out.append(line)
    return out


def content_words(body: str) -> list[str]:
    """Words of the body with heading lines removed.

    Chunk spans index into this list; parse_sections and chunk_sections must
    agree on it, which is why it lives here.
    """
    words: list[str] = []
    for line in _normalize_setext(normalize(body).split("\n")):
        if _strip_atx(line) is not None:
            continue
        words.extend(line.split())
    return words


def parse_sections(body: str) -> SectionTree:
    """Build the section tree of a document body.

    Raises EmptyDocument when the body is blank. Documents without headings
    yield a single root section with an empty heading; words before the
    first heading get the same treatment, as an implicit leading section.
    """
    if not body.strip():
        raise EmptyDocument("document body is blank")

    lines = _normalize_setext(normalize(body).split("\n"))
    roots: list[SectionNode] = []
    stack: list[SectionNode] = []
    offset = 0
    seen_heading = False

    for line in lines:
        heading = _strip_atx(line)
        if heading is None:
            offset += len(line.split())
            continue
        depth, title = heading
        if not seen_heading and offset > 0:
            # Implicit section for leading text; it closes right here and
            # never adopts children regardless of later heading depths.
            roots.append(SectionNode(heading="", depth=1, start=0, end=offset))
        seen_heading = True
        while stack and stack[-1].depth >= depth:
            stack.pop().end = offset
        node = SectionNode(heading=title, depth=depth, start=offset, end=-1)
        if stack:
            stack[-1].children.append(node)
        else:
            roots.append(node)
        stack.append(node)

    for node in stack:
        node.end = offset

    if not seen_heading:
        roots = [SectionNode(heading="", depth=1, start=0, end=offset)]

    return SectionTree(roots=roots, word_count=offset)
