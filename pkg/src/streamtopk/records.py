"""Stream records: token interning, canonical ordering, and the sliding window."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO


class StreamFormatError(ValueError):
    """Raised for malformed or non-monotone stream input."""


class TokenDictionary:
    """Interns string tokens to dense integer ids in first-appearance order."""

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}

    def intern(self, token: str) -> int:
        ident = self._ids.get(token)
        if ident is None:
            ident = len(self._ids)
            self._ids[token] = ident
        return ident

    def id_of(self, token: str) -> int | None:
        return self._ids.get(token)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, token: str) -> bool:
        return token in self._ids


@dataclass(frozen=True)
class RecordSet:
    """A deduplicated token set with arrival timestamp and sequence number.

    ``tokens`` is strictly descending by id.  Later-assigned (higher) ids
    belong to tokens that first appeared later in the stream, which makes the
    canonical order a rarest-first heuristic.
    """

    seq: int
    t: float
    tokens: tuple[int, ...]
    token_set: frozenset[int]

    def __len__(self) -> int:
        return len(self.tokens)


def intern_record(dictionary: TokenDictionary, raw_tokens: Iterable[str],
                  seq: int, t: float) -> RecordSet:
    """Intern raw tokens (extending the dictionary), dedupe, and canonicalize."""
    ids = {dictionary.intern(tok) for tok in raw_tokens}
    return RecordSet(seq=seq, t=t, tokens=tuple(sorted(ids, reverse=True)),
                     token_set=frozenset(ids))


class SlidingWindow:
    """FIFO of records covering the half-open interval (t_index - w, t_index]."""

    def __init__(self, duration: float) -> None:
        if not duration > 0:
            raise ValueError(f"window duration must be positive, got {duration}")
        self.duration = duration
        self._queue: deque[RecordSet] = deque()

    def push(self, record: RecordSet) -> None:
        if self._queue and record.t < self._queue[-1].t:
            raise ValueError("window timestamps must be non-decreasing")
        self._queue.append(record)

    def advance(self, t_index: float) -> list[RecordSet]:
        """Remove and return every record with ``t <= t_index - duration``."""
        boundary = t_index - self.duration
        expired: list[RecordSet] = []
        queue = self._queue
        while queue and queue[0].t <= boundary:
            expired.append(queue.popleft())
        return expired

    def __iter__(self) -> Iterator[RecordSet]:
        return iter(self._queue)

    def __len__(self) -> int:
        return len(self._queue)


def overlap_count(r: tuple[int, ...], s: tuple[int, ...], required: int = 0) -> int | None:
    """Overlap of two canonically ordered token arrays, or None if it cannot
    reach ``required``.

    Merges the two descending arrays and aborts as soon as the remaining
    positions cannot reach the requirement.
    """
    i = j = ov = 0
    lr = len(r)
    ls = len(s)
    while i < lr and j < ls:
        if ov + min(lr - i, ls - j) < required:
            return None
        a = r[i]
        b = s[j]
        if a == b:
            ov += 1
            i += 1
            j += 1
        elif a > b:
            i += 1
        else:
            j += 1
    return ov if ov >= required else None


def iter_stream(lines: Iterable[str]) -> Iterator[tuple[float, list[str]]]:
    """Parse stream text: one ``<timestamp> TAB <token> <token> ...`` per line.

    ``#``-prefixed lines are comments; blank lines are skipped.  Timestamps
    must be non-decreasing; violations raise StreamFormatError with the line
    number.
    """
    prev = -math.inf
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        ts_text, _, token_text = line.partition("\t")
        try:
            t = float(ts_text)
        except ValueError:
            raise StreamFormatError(f"line {lineno}: bad timestamp {ts_text!r}") from None
        if not math.isfinite(t):
            raise StreamFormatError(f"line {lineno}: non-finite timestamp {ts_text!r}")
        if t < prev:
            raise StreamFormatError(
                f"line {lineno}: timestamp {t} decreases below {prev}")
        prev = t
        yield t, token_text.split()


def read_records(source: TextIO | Iterable[str],
                 dictionary: TokenDictionary | None = None,
                 start_seq: int = 0) -> list[RecordSet]:
    """Read a whole stream into RecordSets, interning through ``dictionary``."""
    if dictionary is None:
        dictionary = TokenDictionary()
    out = []
    seq = start_seq
    for t, raw in iter_stream(source):
        out.append(intern_record(dictionary, raw, seq, t))
        seq += 1
    return out
