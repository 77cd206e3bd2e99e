"""Disjoint-set union with path compression and union by rank."""

from typing import Generic, Hashable, Iterable, TypeVar

from src.preftree.core import InputError

T = TypeVar("T", bound=Hashable)


class DisjointSet(Generic[T]):
    """
    Partition of a fixed set of elements into disjoint components.

    Examples
    --------
    >>> ds = DisjointSet(["a", "b", "c"])
    >>> ds.union("a", "b")
    True
    >>> ds.union("a", "b")
    False
    >>> ds.union("b", "c")
    True
    >>> ds.find("a") == ds.find("c")
    True
    >>> ds.components
    1
    """

    def __init__(self, elements: Iterable[T]) -> None:
        self.parent: dict[T, T] = {x: x for x in elements}
        self.rank: dict[T, int] = {x: 0 for x in self.parent}
        self.components = len(self.parent)

    def __contains__(self, x: T) -> bool:
        return x in self.parent

    def find(self, x: T) -> T:
        if x not in self:
            raise InputError(f"unknown element: {x!r}")
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: T, b: T) -> bool:
        """Merge the components of a and b; False when they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.components -= 1
        return True

    def connected(self, a: T, b: T) -> bool:
        return self.find(a) == self.find(b)
