"""Partitions and symmetric group characters."""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING

from greencheck.errors import GreenCheckError, OracleError


if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]
    """Parts, largest first."""

    def __post_init__(self) -> None:
        parts = tuple(sorted((int(p) for p in self.parts if p), reverse=True))
        if any(p < 0 for p in parts):
            msg = f'partition parts must be positive: {self.parts}'
            raise GreenCheckError(msg)
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @classmethod
    def parse(cls, label: str) -> Partition:
        """Inverse of :attr:`label`, e.g. ``'(2,1,1)'``."""
        body = label.strip().removeprefix('(').removesuffix(')')
        return cls(tuple(int(p) for p in body.split(',') if p.strip()))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def label(self) -> str:
        return '(' + ','.join(str(p) for p in self.parts) + ')'

    @functools.cached_property
    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))
        )

    @property
    def n_value(self) -> int:
        """n(lambda) = sum_i (i - 1) * lambda_i."""
        return sum(i * p for i, p in enumerate(self.parts))

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def dominates(self, other: Partition) -> bool:
        total_self = total_other = 0
        for i in range(max(self.length, other.length)):
            total_self += self.parts[i] if i < self.length else 0
            total_other += other.parts[i] if i < other.length else 0
            if total_self < total_other:
                return False
        return True

    def __str__(self) -> str:
        return self.label


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order, (n) first."""

    def generate(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in generate(remaining - part, part):
                yield (part, *rest)

    for parts in generate(n, n):
        yield Partition(parts)


def cycle_type(permutation: Iterable[int]) -> Partition:
    """Cycle type of a permutation given as the image list of 0..n-1."""
    images = list(permutation)
    seen = [False] * len(images)
    lengths = []
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        point = start
        while not seen[point]:
            seen[point] = True
            point = images[point]
            length += 1
        lengths.append(length)
    return Partition(tuple(lengths))


@functools.cache
def _mn(parts: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not parts else 0
    k, rest = cycles[0], cycles[1:]
    length = len(parts)
    beta = [p + (length - 1 - i) for i, p in enumerate(parts)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in beta_set:
            continue
        # rim hook height = number of beta numbers strictly between
        sign = -1 if sum(1 for c in beta if target < c < b) % 2 else 1
        new_beta = sorted((beta_set - {b}) | {target}, reverse=True)
        new_parts = tuple(x - (length - 1 - i) for i, x in enumerate(new_beta))
        total += sign * _mn(tuple(p for p in new_parts if p > 0), rest)
    return total


def mn_character(shape: Partition, cycles: Partition) -> int:
    """Symmetric group character value chi^shape at cycle type ``cycles``."""
    if shape.size != cycles.size:
        msg = f'size mismatch: {shape} vs {cycles}'
        raise OracleError(msg)
    return _mn(shape.parts, cycles.parts)
