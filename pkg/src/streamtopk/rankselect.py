"""Order-statistic treap over unique, totally ordered keys.

Supports insert, remove, rank (count of strictly smaller keys), and select
(key at a given rank) in expected O(log n).  Priorities come from a seeded
RNG so tree shapes are reproducible run to run.
"""

from __future__ import annotations

import random
from typing import Any, Iterator


class _Node:
    __slots__ = ("key", "prio", "size", "left", "right")

    def __init__(self, key: Any, prio: float) -> None:
        self.key = key
        self.prio = prio
        self.size = 1
        self.left: _Node | None = None
        self.right: _Node | None = None


def _size(node: _Node | None) -> int:
    return node.size if node is not None else 0


def _pull(node: _Node) -> None:
    node.size = 1 + _size(node.left) + _size(node.right)


def _rotate_right(node: _Node) -> _Node:
    top = node.left
    node.left = top.right
    top.right = node
    _pull(node)
    _pull(top)
    return top


def _rotate_left(node: _Node) -> _Node:
    top = node.right
    node.right = top.left
    top.left = node
    _pull(node)
    _pull(top)
    return top


def _merge(a: _Node | None, b: _Node | None) -> _Node | None:
    # All keys of a precede all keys of b.
    if a is None:
        return b
    if b is None:
        return a
    if a.prio < b.prio:
        a.right = _merge(a.right, b)
        _pull(a)
        return a
    b.left = _merge(a, b.left)
    _pull(b)
    return b


class RankTree:
    def __init__(self, seed: int = 0) -> None:
        self._root: _Node | None = None
        self._rand = random.Random(seed).random

    def __len__(self) -> int:
        return _size(self._root)

    def insert(self, key: Any) -> None:
        self._root = self._insert(self._root, key, self._rand())

    def _insert(self, node: _Node | None, key: Any, prio: float) -> _Node:
        if node is None:
            return _Node(key, prio)
        if key < node.key:
            node.left = self._insert(node.left, key, prio)
            if node.left.prio < node.prio:
                node = _rotate_right(node)
        elif key > node.key:
            node.right = self._insert(node.right, key, prio)
            if node.right.prio < node.prio:
                node = _rotate_left(node)
        else:
            raise ValueError(f"duplicate key: {key!r}")
        _pull(node)
        return node

    def remove(self, key: Any) -> None:
        self._root = self._remove(self._root, key)

    def _remove(self, node: _Node | None, key: Any) -> _Node | None:
        if node is None:
            raise KeyError(key)
        if key < node.key:
            node.left = self._remove(node.left, key)
        elif key > node.key:
            node.right = self._remove(node.right, key)
        else:
            return _merge(node.left, node.right)
        _pull(node)
        return node

    def count_less(self, key: Any) -> int:
        """Number of stored keys strictly smaller than ``key`` (which need
        not be present)."""
        node = self._root
        acc = 0
        while node is not None:
            if key <= node.key:
                node = node.left
            else:
                acc += _size(node.left) + 1
                node = node.right
        return acc

    def select(self, index: int) -> Any:
        """Key at 0-based ``index`` in sorted order."""
        node = self._root
        if index < 0 or index >= _size(node):
            raise IndexError(f"rank {index} out of range for size {_size(node)}")
        while True:
            left = _size(node.left)
            if index < left:
                node = node.left
            elif index == left:
                return node.key
            else:
                index -= left + 1
                node = node.right

    def __iter__(self) -> Iterator[Any]:
        stack: list[_Node] = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node.key
            node = node.right
