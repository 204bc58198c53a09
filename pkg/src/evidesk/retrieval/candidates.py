"""Retrieval candidates and score fusion."""

from __future__ import annotations

from dataclasses import dataclass, field

RETRIEVER_SCORE_KEYS = ("bm25", "dense", "maxsim")


@dataclass
class Candidate:
    chunk_id: str
    scores: dict[str, float] = field(default_factory=dict)
    retrievers: set[str] = field(default_factory=set)
    retained: bool | None = None
    judgment: str | None = None
    verdict_reason: str = ""

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "scores": {k: self.scores[k] for k in sorted(self.scores)},
            "retrievers": sorted(self.retrievers),
            "retained": self.retained,
            "judgment": self.judgment,
            "verdict_reason": self.verdict_reason,
        }


def _normalise(values: dict[str, float]) -> dict[str, float]:
    """Min-max scale a chunk_id -> score map; a constant field maps to 1.0."""
    if not values:
        return {}
    lo = min(values.values())
    hi = max(values.values())
    if hi == lo:
        return {cid: 1.0 for cid in values}
    span = hi - lo
    return {cid: (v - lo) / span for cid, v in values.items()}


def fuse_dedup(candidate_lists: list[list[Candidate]]) -> list[Candidate]:
    """Merge per-retriever result lists into one ranked, deduplicated list.

    Duplicates collapse by chunk_id: retriever sets union, score maps merge
    keeping the larger value on a shared key. Each retriever's scores are
    then min-max normalized over the merged pool and a candidate ranks by
    the best of its normalized scores, ties broken by ascending chunk_id.
    Normalizing after the merge makes the result independent of how the
    input lists were ordered or split, and reapplying fusion to its own
    output changes nothing.
    """
    merged: dict[str, Candidate] = {}
    for candidates in candidate_lists:
        for cand in candidates:
            kept = merged.get(cand.chunk_id)
            if kept is None:
                merged[cand.chunk_id] = Candidate(
                    chunk_id=cand.chunk_id,
                    scores=dict(cand.scores),
                    retrievers=set(cand.retrievers),
                )
                continue
            kept.retrievers |= cand.retrievers
            for key, value in cand.scores.items():
                if key not in kept.scores or value > kept.scores[key]:
                    kept.scores[key] = value

    norm_by_key = {
        key: _normalise(
            {cid: c.scores[key] for cid, c in merged.items() if key in c.scores}
        )
        for key in RETRIEVER_SCORE_KEYS
    }

    def rank_key(cand: Candidate) -> float:
        best = 0.0
        for key in RETRIEVER_SCORE_KEYS:
            norm = norm_by_key[key].get(cand.chunk_id)
            if norm is not None and norm > best:
                best = norm
        return best

    return sorted(merged.values(), key=lambda c: (-rank_key(c), c.chunk_id))
