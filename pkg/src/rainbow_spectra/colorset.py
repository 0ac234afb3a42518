"""Sets of colors mod M stored as unions of cyclic arcs."""

from __future__ import annotations

from typing import Iterable


def _linear(M: int, arcs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Split cyclic arcs (start, width) into half-open intervals inside [0, M)."""
    out = []
    for start, width in arcs:
        if width <= 0:
            continue
        if width >= M:
            return [(0, M)]
        start %= M
        end = start + width
        if end <= M:
            out.append((start, end))
        else:
            out.append((start, M))
            out.append((0, end - M))
    return out


def _merge(intervals: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Merge sorted-or-not intervals; touching intervals are fused."""
    out: list[list[int]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


class ColorSet:
    """Normalized union of disjoint, non-adjacent arcs [start, start+width) mod M."""

    __slots__ = ("M", "_iv", "_hash")

    def __init__(self, M: int, arcs: Iterable[tuple[int, int]] = ()):
        if M < 1:
            raise ValueError("modulus must be positive")
        self.M = M
        self._iv = tuple(_merge(_linear(M, arcs)))
        self._hash = None

    @classmethod
    def _from_intervals(cls, M: int, iv) -> "ColorSet":
        obj = cls.__new__(cls)
        obj.M = M
        obj._iv = tuple(iv)
        obj._hash = None
        return obj

    @classmethod
    def empty(cls, M: int) -> "ColorSet":
        return cls._from_intervals(M, ())

    @classmethod
    def full(cls, M: int) -> "ColorSet":
        return cls._from_intervals(M, ((0, M),))

    @classmethod
    def single(cls, M: int, c: int) -> "ColorSet":
        c %= M
        return cls._from_intervals(M, ((c, c + 1),))

    @classmethod
    def arc(cls, M: int, start: int, width: int) -> "ColorSet":
        return cls(M, [(start, width)])

    @classmethod
    def span(cls, M: int, first: int, last: int) -> "ColorSet":
        """Colors first, first+1, ..., last walking clockwise (inclusive)."""
        return cls(M, [(first, (last - first) % M + 1)])

    @classmethod
    def of(cls, M: int, colors: Iterable[int]) -> "ColorSet":
        return cls(M, [(c, 1) for c in colors])

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """Cyclic arcs (start, width); an interval touching M wraps into one at 0."""
        iv = list(self._iv)
        if len(iv) >= 2 and iv[0][0] == 0 and iv[-1][1] == self.M:
            first = iv.pop(0)
            last = iv.pop()
            iv.append((last[0], last[1] - last[0] + first[1]))
            return tuple((a, b - a) for a, b in iv[:-1]) + (iv[-1],)
        return tuple((a, b - a) for a, b in iv)

    def __len__(self) -> int:
        return sum(b - a for a, b in self._iv)

    def __bool__(self) -> bool:
        return bool(self._iv)

    def __iter__(self):
        for a, b in self._iv:
            yield from range(a, b)

    def __contains__(self, c: int) -> bool:
        c %= self.M
        return any(a <= c < b for a, b in self._iv)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColorSet) and self.M == other.M and self._iv == other._iv

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.M, self._iv))
        return self._hash

    def __repr__(self) -> str:
        parts = []
        for a, b in self._iv:
            parts.append(str(a) if b - a == 1 else f"{a}..{b - 1}")
        return f"ColorSet(M={self.M}, {{{', '.join(parts)}}})"

    def _check(self, other: "ColorSet") -> None:
        if self.M != other.M:
            raise ValueError(f"modulus mismatch: {self.M} vs {other.M}")

    def __or__(self, other: "ColorSet") -> "ColorSet":
        self._check(other)
        return ColorSet._from_intervals(self.M, _merge(list(self._iv) + list(other._iv)))

    def __and__(self, other: "ColorSet") -> "ColorSet":
        self._check(other)
        out = []
        i = j = 0
        A, B = self._iv, other._iv
        while i < len(A) and j < len(B):
            lo = max(A[i][0], B[j][0])
            hi = min(A[i][1], B[j][1])
            if lo < hi:
                out.append((lo, hi))
            if A[i][1] < B[j][1]:
                i += 1
            else:
                j += 1
        return ColorSet._from_intervals(self.M, out)

    def __sub__(self, other: "ColorSet") -> "ColorSet":
        return self & other.complement()

    def complement(self) -> "ColorSet":
        out = []
        prev = 0
        for a, b in self._iv:
            if a > prev:
                out.append((prev, a))
            prev = b
        if prev < self.M:
            out.append((prev, self.M))
        return ColorSet._from_intervals(self.M, out)

    def isdisjoint(self, other: "ColorSet") -> bool:
        return not (self & other)

    def issubset(self, other: "ColorSet") -> bool:
        return not (self - other)

    def shifted(self, k: int) -> "ColorSet":
        """Image under c -> c + k."""
        return ColorSet(self.M, [(a + k, b - a) for a, b in self._iv])

    def reflected(self, c: int) -> "ColorSet":
        """Image under x -> c - x."""
        return ColorSet(self.M, [(c - (b - 1), b - a) for a, b in self._iv])

    def to_mask(self) -> int:
        m = 0
        for a, b in self._iv:
            m |= ((1 << (b - a)) - 1) << a
        return m

    @staticmethod
    def union_all(M: int, sets: Iterable["ColorSet"]) -> "ColorSet":
        iv = []
        for s in sets:
            iv.extend(s._iv)
        return ColorSet._from_intervals(M, _merge(iv))

    @staticmethod
    def first_overlap(sets: list["ColorSet"]) -> tuple[int, int] | None:
        """Indices of some pair of intersecting sets, or None if pairwise disjoint."""
        tagged = sorted((a, b, k) for k, s in enumerate(sets) for a, b in s._iv)
        reach, owner = -1, -1
        for a, b, k in tagged:
            if a < reach and owner != k:
                return (min(owner, k), max(owner, k))
            if b > reach:
                reach, owner = b, k
        return None
