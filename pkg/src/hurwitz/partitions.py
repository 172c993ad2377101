"""Integer partitions and their combinatorial anatomy.

A partition is a plain tuple of weakly decreasing positive integers; the
empty tuple is the unique partition of 0.  The canonical enumeration
order is reverse-lexicographic -- ``(d,)`` first, ``(1,)*d`` last -- and
every table or cached partition sum in this package indexes partitions
in exactly that order, so fixtures and on-disk caches stay stable.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, SizeLimitError

Partition = tuple[int, ...]

DEFAULT_PARTITION_CEILING = 40


def check_partition(lam) -> Partition:
    """Validate and normalise a partition given as any iterable of ints."""
    lam = tuple(int(p) for p in lam)
    for i, p in enumerate(lam):
        if p < 1:
            raise DomainError(f"partition parts must be positive: {lam}")
        if i and lam[i - 1] < p:
            raise DomainError(f"partition parts must be weakly decreasing: {lam}")
    return lam


@lru_cache(maxsize=None)
def _partitions_rec(remaining: int, max_part: int) -> tuple[Partition, ...]:
    if remaining == 0:
        return ((),)
    out = []
    for first in range(min(remaining, max_part), 0, -1):
        for rest in _partitions_rec(remaining - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(d: int, ceiling: int = DEFAULT_PARTITION_CEILING) -> list[Partition]:
    """All partitions of ``d``, each exactly once, in reverse-lex order."""
    if d < 0:
        raise DomainError(f"cannot partition the negative integer {d}")
    if d > ceiling:
        raise SizeLimitError(f"degree {d} exceeds the partition ceiling {ceiling}")
    return list(_partitions_rec(d, max(d, 1)))


def transpose(lam) -> Partition:
    """The conjugate partition, by counting column heights."""
    lam = check_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def contents(lam) -> list[int]:
    """Contents ``j - i`` of the diagram boxes ``(i, j)``, row by row."""
    lam = check_partition(lam)
    return [j - i for i, p in enumerate(lam) for j in range(p)]


def hook_lengths(lam) -> list[list[int]]:
    """Hook lengths arranged like the diagram rows."""
    lam = check_partition(lam)
    lt = transpose(lam)
    return [
        [lam[i] - j + lt[j] - i - 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


@dataclass(frozen=True)
class ClassData:
    """Conjugacy-class data of a cycle type: |class|, stabilizer order, multiplicities."""

    class_size: int
    stabilizer: int
    multiplicities: tuple[tuple[int, int], ...]

    def multiplicity(self, part: int) -> int:
        for p, m in self.multiplicities:
            if p == part:
                return m
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.multiplicities)


def class_data(mu) -> ClassData:
    """Class size d!/z(mu), stabilizer z(mu) = prod i^{m_i} m_i!, multiplicity map."""
    mu = check_partition(mu)
    mult = Counter(mu)
    stab = 1
    for part, m in mult.items():
        stab *= part**m * math.factorial(m)
    return ClassData(
        class_size=math.factorial(sum(mu)) // stab,
        stabilizer=stab,
        multiplicities=tuple(sorted(mult.items(), reverse=True)),
    )


@dataclass(frozen=True)
class FrobeniusShifted:
    """Shifted Frobenius coordinates: R diagonal boxes, half-integer arms/legs.

    Both coordinate lists are strictly decreasing, all entries >= 1/2,
    and their total sum equals the size of the partition.
    """

    r: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]


def frobenius_shifted(lam) -> FrobeniusShifted:
    """Half-integer arm/leg lengths of the diagonal hooks of ``lam``."""
    lam = check_partition(lam)
    lt = transpose(lam)
    r = sum(1 for i, p in enumerate(lam) if p >= i + 1)
    a = tuple(Fraction(2 * (lam[i] - (i + 1)) + 1, 2) for i in range(r))
    b = tuple(Fraction(2 * (lt[i] - (i + 1)) + 1, 2) for i in range(r))
    return FrobeniusShifted(r, a, b)


def parse_partition(text: str) -> Partition:
    """Parse a comma-separated list of parts; empty string means the empty partition."""
    text = text.strip().strip("[]()")
    if not text:
        return ()
    try:
        parts = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise DomainError(f"cannot parse partition from {text!r}") from exc
    return check_partition(parts)


def format_partition(lam) -> str:
    return ",".join(str(p) for p in lam)
