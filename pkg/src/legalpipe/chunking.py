"""Long-document input construction over token sequences.

Three independent operations: head truncation, overlapping sliding-window
chunking, and tail extraction. All are pure index arithmetic; padding and
model-specific special tokens are out of scope here.

Defaults: windows of 512 tokens overlapping by 100, tails of 510 tokens
(leaving room for two special tokens in a 512 budget), truncation at 10000
tokens. Window lengths of 500 are equally supported via the parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TypeVar

T = TypeVar("T")

DEFAULT_CHUNK_LEN = 512
DEFAULT_OVERLAP = 100
DEFAULT_TAIL = 510
DEFAULT_MAX_TOKENS = 10000


@dataclass(frozen=True)
class Chunk:
    """One window: a half-open token-index range [first, last) plus its ordinal."""

    index: int
    first: int
    last: int

    def __len__(self) -> int:
        return self.last - self.first


def truncate_tokens(tokens: Sequence[T], max_len: int = DEFAULT_MAX_TOKENS) -> list[T]:
    """Keep the first max_len tokens; shorter inputs pass through unchanged."""
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    return list(tokens[:max_len])


def chunk_tokens(
    tokens: Sequence[T],
    chunk_len: int = DEFAULT_CHUNK_LEN,
    overlap: int = DEFAULT_OVERLAP,
) -> list[Chunk]:
    """Cover the token sequence with sliding windows.

    Window i starts at i * (chunk_len - overlap). Interior windows have
    exactly chunk_len tokens and overlap their successor by exactly
    ``overlap``; the final window may be shorter and is never emitted if the
    previous one already reached the end. Every token lands in at least one
    window.
    """
    if not 0 <= overlap < chunk_len:
        raise ValueError(
            f"overlap must satisfy 0 <= overlap < chunk_len, got"
            f" overlap={overlap}, chunk_len={chunk_len}"
        )
    n = len(tokens)
    if n == 0:
        return []
    stride = chunk_len - overlap
    chunks: list[Chunk] = []
    start = 0
    while True:
        end = min(start + chunk_len, n)
        chunks.append(Chunk(len(chunks), start, end))
        if end == n:
            return chunks
        start += stride


def tail_tokens(tokens: Sequence[T], n: int = DEFAULT_TAIL) -> list[T]:
    """Keep the last n tokens in order; the whole input if it is shorter."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return []
    return list(tokens[-n:])
