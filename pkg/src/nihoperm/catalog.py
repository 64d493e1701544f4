"""Append-only JSON-lines catalog of verified polynomials."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field as dc_field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

log = logging.getLogger(__name__)

SOURCES = ("theorem31", "table1", "table2-fraction", "manual")
VERIFIERS = ("exhaustive", "expsum", "subgroup")


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class CatalogRecord:
    m: int
    n: int
    d1: int
    d2: int
    d3: int
    canonical: list[int]
    source: str
    verified_by: list[str]
    is_permutation: bool
    i: int | None = None
    j: int | None = None
    u: int | None = None
    timestamp: str = dc_field(default_factory=utc_now)
    # per-method verdicts; they differ only when the verifiers disagree
    verdicts: dict[str, bool] = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.verified_by:
            raise ValueError("verified_by must be nonempty")
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        if unknown := set(self.verified_by) - set(VERIFIERS):
            raise ValueError(f"unknown verifiers {sorted(unknown)}")
        self.canonical = list(self.canonical)

    @property
    def exponents(self) -> tuple[int, int, int]:
        return self.d1, self.d2, self.d3

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CatalogRecord":
        return cls(**data)


def append_records(path: str | Path, records: Iterable[CatalogRecord]) -> int:
    """Append records, one JSON object per line; returns how many were written."""
    count = 0
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
            count += 1
    return count


@dataclass
class QueryResult:
    records: list[CatalogRecord]
    malformed: int = 0


def iter_records(path: str | Path, stats: QueryResult | None = None) -> Iterator[CatalogRecord]:
    """Stream records, skipping lines that do not parse (e.g. a torn tail)."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = CatalogRecord.from_dict(json.loads(line))
            except (ValueError, TypeError) as exc:
                log.warning("%s:%d: skipping malformed record (%s)", path, lineno, exc)
                if stats is not None:
                    stats.malformed += 1
                continue
            yield rec


def catalog_query(
    paths: str | Path | Iterable[str | Path],
    *,
    m: int | None = None,
    source: str | None = None,
    canonical: Iterable[int] | None = None,
    dedup: bool = False,
) -> QueryResult:
    """Filter records from one or more catalog files; ``dedup`` keeps the first
    record per (m, canonical form)."""
    if isinstance(paths, (str, Path)):
        paths = [paths]
    result = QueryResult([])
    want_canon = list(canonical) if canonical is not None else None
    seen = set()
    for path in paths:
        for rec in iter_records(path, result):
            if m is not None and rec.m != m:
                continue
            if source is not None and rec.source != source:
                continue
            if want_canon is not None and rec.canonical != want_canon:
                continue
            if dedup:
                key = (rec.m, tuple(rec.canonical))
                if key in seen:
                    continue
                seen.add(key)
            result.records.append(rec)
    return result
