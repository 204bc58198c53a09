"""Shared text segmentation helpers.

Two notions of "token" coexist deliberately:

* words: whitespace-separated units of NFC-normalized text. Chunk spans and
  context budgets are measured in words, so punctuation stays attached.
* index tokens: lowercased maximal runs of word characters (underscore
  excluded). The lexical index, the hashing embedder, and the overlap
  reranker all share this segmentation so their scores stay comparable.
"""

from __future__ import annotations

import re
import unicodedata

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def split_words(text: str) -> list[str]:
    return normalize(text).split()


def count_words(text: str) -> int:
    return len(split_words(text))


def index_tokens(text: str) -> list[str]:
    return _TOKEN_RE.findall(normalize(text).lower())
