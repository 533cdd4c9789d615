"""Token -> posting-list index over the valid sets of a stream.

Posting lists are intrusive doubly-linked lists kept in arrival order, which
(with non-decreasing timestamps) is ascending expiration order.  Appends go
to the tail; removal unlinks by node handle, so indexing or dropping a set
costs O(number of its tokens) regardless of list lengths.
"""

from __future__ import annotations

from typing import Iterator

from .records import RecordSet


class _PostingNode:
    __slots__ = ("record", "prev", "next")

    def __init__(self, record: RecordSet) -> None:
        self.record = record
        self.prev: _PostingNode | None = None
        self.next: _PostingNode | None = None


class PostingList:
    def __init__(self) -> None:
        self.head: _PostingNode | None = None
        self.tail: _PostingNode | None = None
        self._length = 0

    def __len__(self) -> int:
        return self._length

    def append(self, record: RecordSet) -> _PostingNode:
        node = _PostingNode(record)
        node.prev = self.tail
        if self.tail is not None:
            self.tail.next = node
        self.tail = node
        if self.head is None:
            self.head = node
        self._length += 1
        return node

    def unlink(self, node: _PostingNode) -> None:
        if node.prev is not None:
            node.prev.next = node.next
        else:
            self.head = node.next
        if node.next is not None:
            node.next.prev = node.prev
        else:
            self.tail = node.prev
        node.prev = node.next = None
        self._length -= 1

    def iter_newest_first(self) -> Iterator[RecordSet]:
        node = self.tail
        while node is not None:
            yield node.record
            node = node.prev

    def iter_oldest_first(self) -> Iterator[RecordSet]:
        node = self.head
        while node is not None:
            yield node.record
            node = node.next


class InvertedIndex:
    def __init__(self) -> None:
        self._lists: dict[int, PostingList] = {}
        self._handles: dict[int, list[tuple[int, _PostingNode]]] = {}
        self._last_t = float("-inf")

    def __len__(self) -> int:
        """Number of indexed sets."""
        return len(self._handles)

    def __contains__(self, seq: int) -> bool:
        return seq in self._handles

    def insert(self, record: RecordSet) -> None:
        """Append a record at the tail of each of its tokens' lists."""
        if record.t < self._last_t:
            raise ValueError("index inserts must have non-decreasing timestamps")
        if record.seq in self._handles:
            raise ValueError(f"set {record.seq} is already indexed")
        self._last_t = record.t
        handles = []
        for token in record.tokens:
            plist = self._lists.get(token)
            if plist is None:
                plist = self._lists[token] = PostingList()
            handles.append((token, plist.append(record)))
        self._handles[record.seq] = handles

    def remove(self, record: RecordSet) -> None:
        """Unlink a previously inserted record from all its lists."""
        handles = self._handles.pop(record.seq, None)
        if handles is None:
            raise ValueError(f"set {record.seq} is not indexed")
        for token, node in handles:
            plist = self._lists[token]
            plist.unlink(node)
            if len(plist) == 0:
                del self._lists[token]

    def postings(self, token: int) -> PostingList | None:
        return self._lists.get(token)

    def list_length(self, token: int) -> int:
        plist = self._lists.get(token)
        return len(plist) if plist is not None else 0

    def tokens(self) -> Iterator[int]:
        return iter(self._lists)
