"""Document ingestion: load news corpora from JSONL/CSV, validate, filter.

A corpus is an immutable, deterministically ordered collection of documents
(sorted by timestamp, then id). Malformed input records are collected into a
per-record error report instead of being dropped silently; the loader fails
hard when more than 10% of the records are malformed or when ids collide.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
import warnings
from dataclasses import dataclass, field

REQUIRED_FIELDS = ("id", "date", "text", "source")

# Malformed-record share above which the load aborts.
MAX_MALFORMED_FRACTION = 0.10


class CorpusLoadError(ValueError):
    """Raised when a corpus file cannot be loaded at all."""

    def __init__(self, message, errors=()):
        super().__init__(message)
        self.errors = tuple(errors)


@dataclass(frozen=True)
class RecordError:
    """One malformed input record: 1-based line number plus the reason."""

    line: int
    reason: str

    def to_dict(self):
        return {"line": self.line, "reason": self.reason}


@dataclass(frozen=True)
class Document:
    id: str
    timestamp: datetime.date
    text: str
    source: str


@dataclass(frozen=True)
class Corpus:
    """Ordered collection of documents plus ingestion metadata.

    Iteration order is deterministic: sorted by (timestamp, id). The manifest
    records document counts per source and per calendar month.
    """

    documents: tuple = ()
    errors: tuple = field(default=(), compare=False)

    def __post_init__(self):
        docs = tuple(sorted(self.documents, key=lambda d: (d.timestamp.isoformat(), d.id)))
        object.__setattr__(self, "documents", docs)
        seen = set()
        for d in docs:
            if d.id in seen:
                raise CorpusLoadError(f"duplicate document id: {d.id!r}")
            seen.add(d.id)

    def __iter__(self):
        return iter(self.documents)

    def __len__(self):
        return len(self.documents)

    @property
    def manifest(self):
        by_source = {}
        by_period = {}
        for d in self.documents:
            by_source[d.source] = by_source.get(d.source, 0) + 1
            period = d.timestamp.strftime("%Y-%m")
            by_period[period] = by_period.get(period, 0) + 1
        return {
            "total": len(self.documents),
            "by_source": dict(sorted(by_source.items())),
            "by_period": dict(sorted(by_period.items())),
        }

    def to_jsonl(self):
        """Canonical JSONL serialization; byte-identical for equal corpora."""
        buf = io.StringIO()
        for d in self.documents:
            rec = {"id": d.id, "date": d.timestamp.isoformat(), "text": d.text, "source": d.source}
            buf.write(json.dumps(rec, sort_keys=True, ensure_ascii=False))
            buf.write("\n")
        return buf.getvalue().encode("utf-8")

    def error_report(self):
        """Loader diagnostics as JSON-ready dicts ({line, reason} entries)."""
        return [e.to_dict() for e in self.errors]


def _parse_record(raw, line_no):
    for name in REQUIRED_FIELDS:
        if name not in raw or raw[name] is None:
            return None, RecordError(line_no, f"missing field {name!r}")
    if not isinstance(raw["id"], str) or not raw["id"]:
        return None, RecordError(line_no, "field 'id' must be a non-empty string")
    try:
        date = datetime.date.fromisoformat(str(raw["date"]))
    except ValueError:
        return None, RecordError(line_no, f"invalid ISO-8601 date: {raw['date']!r}")
    if not isinstance(raw["text"], str):
        return None, RecordError(line_no, "field 'text' must be a string")
    return Document(id=raw["id"], timestamp=date, text=raw["text"], source=str(raw["source"])), None


def _iter_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                yield line_no, None, RecordError(line_no, f"invalid JSON: {exc.msg}")
                continue
            if not isinstance(raw, dict):
                yield line_no, None, RecordError(line_no, "record is not a JSON object")
                continue
            yield line_no, raw, None


def _iter_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return
        missing = [f for f in REQUIRED_FIELDS if f not in reader.fieldnames]
        if missing:
            raise CorpusLoadError(f"CSV header is missing columns: {missing}")
        for raw in reader:
            # DictReader maps short rows to None values; _parse_record flags them.
            yield reader.line_num, raw, None


def load_corpus(path, format="jsonl"):
    """Load a corpus from a JSONL or CSV file.

    Records must carry id, date (ISO-8601), text, and source. Malformed
    records are reported on ``Corpus.errors`` (one {line, reason} entry each);
    more than 10% malformed aborts the load. Documents with empty text are
    kept but flagged with a warning.
    """
    if format == "jsonl":
        rows = _iter_jsonl(path)
    elif format == "csv":
        rows = _iter_csv(path)
    else:
        raise ValueError(f"unsupported corpus format: {format!r}")

    try:
        materialized = list(rows)
    except OSError as exc:
        raise CorpusLoadError(f"cannot read corpus file {path}: {exc}") from exc

    docs, errors = [], []
    for line_no, raw, err in materialized:
        if err is not None:
            errors.append(err)
            continue
        doc, err = _parse_record(raw, line_no)
        if err is not None:
            errors.append(err)
        else:
            docs.append(doc)

    total = len(docs) + len(errors)
    if total == 0:
        warnings.warn(f"corpus file {path} contains no records")
    elif errors and len(errors) / total > MAX_MALFORMED_FRACTION:
        detail = "; ".join(f"line {e.line}: {e.reason}" for e in errors[:20])
        raise CorpusLoadError(
            f"{len(errors)}/{total} records malformed (>{MAX_MALFORMED_FRACTION:.0%}): {detail}",
            errors=errors,
        )

    empty = sum(1 for d in docs if not d.text)
    if empty:
        warnings.warn(f"{empty} document(s) have empty text (kept)")

    return Corpus(documents=tuple(docs), errors=tuple(errors))


def filter_corpus(corpus, date_from=None, date_to=None, sources=None):
    """Restrict a corpus to a date range (inclusive) and/or a set of sources."""
    if date_from is not None and date_to is not None and date_from > date_to:
        raise ValueError(f"inverted date range: {date_from} > {date_to}")
    source_set = set(sources) if sources is not None else None
    kept = tuple(
        d
        for d in corpus
        if (date_from is None or d.timestamp >= date_from)
        and (date_to is None or d.timestamp <= date_to)
        and (source_set is None or d.source in source_set)
    )
    return Corpus(documents=kept)
