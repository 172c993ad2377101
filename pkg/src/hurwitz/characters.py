"""Exact irreducible characters of symmetric groups.

Values are computed by the Murnaghan-Nakayama rule, implemented on
beta-sets (first-column hook lengths) and memoized on the pair
(remaining shape, remaining cycle multiset).  Everything is an exact
Python integer; no linear algebra is involved.

``char_table(d)`` builds and memoizes the full table for one degree.
Construction is single-writer behind a lock; the published table is
immutable and may be shared freely between threads.  Setting the
environment variable ``HURWITZ_CACHE_DIR`` enables an on-disk JSON cache
with a self-describing versioned header.
"""

from __future__ import annotations

import json
import math
import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import DomainError, SizeLimitError
from .partitions import (
    Partition,
    check_partition,
    enumerate_partitions,
    hook_lengths,
)

DEFAULT_TABLE_CEILING = 18
CACHE_DIR_ENV = "HURWITZ_CACHE_DIR"
_TABLE_FORMAT = "hurwitz-character-table"
_TABLE_VERSION = 1


def dim(lam) -> int:
    """Dimension of the irreducible representation, by the hook-length formula."""
    lam = check_partition(lam)
    d = sum(lam)
    denom = 1
    for row in hook_lengths(lam):
        for h in row:
            denom *= h
    return math.factorial(d) // denom


@lru_cache(maxsize=None)
def _mn(shape: Partition, cycles: Partition) -> int:
    # cycles is sorted in weakly decreasing order; sizes match by construction
    if not cycles:
        return 1
    t = cycles[0]
    rest = cycles[1:]
    ell = len(shape)
    beta = [shape[i] + ell - 1 - i for i in range(ell)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - t
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((bset - {b}) | {nb}, reverse=True)
        nshape = []
        n = len(newbeta)
        for i, x in enumerate(newbeta):
            part = x - (n - 1 - i)
            if part:
                nshape.append(part)
        term = _mn(tuple(nshape), rest)
        total += -term if height % 2 else term
    return total


def character(lam, mu) -> int:
    """Irreducible character value chi_lambda on the class of cycle type mu."""
    lam = check_partition(lam)
    mu = check_partition(mu)
    if sum(lam) != sum(mu):
        raise DomainError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(lam, tuple(sorted(mu, reverse=True)))


@dataclass(frozen=True)
class CharTable:
    """Full character table of one degree, rows lambda, columns mu."""

    degree: int
    partitions: tuple[Partition, ...]
    entries: tuple[tuple[int, ...], ...]

    def index(self, lam) -> int:
        return _partition_index(self.degree)[check_partition(lam)]

    def value(self, lam, mu) -> int:
        return self.entries[self.index(lam)][self.index(mu)]

    def row(self, lam) -> tuple[int, ...]:
        return self.entries[self.index(lam)]

    def csv_rows(self) -> list[list[str]]:
        head = ["lambda\\mu"] + ["+".join(map(str, mu)) or "0" for mu in self.partitions]
        rows = [head]
        for lam, row in zip(self.partitions, self.entries):
            rows.append(["+".join(map(str, lam)) or "0"] + [str(v) for v in row])
        return rows


@lru_cache(maxsize=None)
def _partition_index(d: int) -> dict[Partition, int]:
    return {lam: i for i, lam in enumerate(enumerate_partitions(d))}


_tables: dict[int, CharTable] = {}
_tables_lock = threading.Lock()


def _cache_path(d: int) -> Path | None:
    root = os.environ.get(CACHE_DIR_ENV)
    if not root:
        return None
    return Path(root) / f"character-table-d{d}.json"


def _load_cached(d: int) -> CharTable | None:
    path = _cache_path(d)
    if path is None or not path.is_file():
        return None
    try:
        blob = json.loads(path.read_text())
        if blob.get("format") != _TABLE_FORMAT or blob.get("version") != _TABLE_VERSION:
            return None
        if blob.get("degree") != d:
            return None
        parts = tuple(tuple(p) for p in blob["partitions"])
        if parts != tuple(enumerate_partitions(d)):
            return None
        entries = tuple(tuple(int(v) for v in row) for row in blob["entries"])
        if len(entries) != len(parts) or any(len(r) != len(parts) for r in entries):
            return None
        return CharTable(d, parts, entries)
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _store_cached(table: CharTable) -> None:
    path = _cache_path(table.degree)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        blob = {
            "format": _TABLE_FORMAT,
            "version": _TABLE_VERSION,
            "degree": table.degree,
            "partitions": [list(p) for p in table.partitions],
            "entries": [list(row) for row in table.entries],
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(blob))
        tmp.replace(path)
    except OSError:
        pass  # the disk cache is best-effort


def char_table(d: int, ceiling: int = DEFAULT_TABLE_CEILING) -> CharTable:
    """The memoized character table for degree ``d`` (immutable once built)."""
    if d < 0:
        raise DomainError(f"degree must be nonnegative: {d}")
    if d > ceiling:
        raise SizeLimitError(f"degree {d} exceeds the character-table ceiling {ceiling}")
    table = _tables.get(d)
    if table is not None:
        return table
    with _tables_lock:
        table = _tables.get(d)
        if table is not None:
            return table
        table = _load_cached(d)
        if table is None:
            parts = tuple(enumerate_partitions(d))
            entries = tuple(
                tuple(character(lam, mu) for mu in parts) for lam in parts
            )
            table = CharTable(d, parts, entries)
            _store_cached(table)
        _tables[d] = table
    return table
