"""Readers and writers for corpus, link and configuration files."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterable, Iterator

from .core import PipelineConfig, Sentence, SimplifiedSentence

logger = logging.getLogger(__name__)


class InputError(ValueError):
    """Malformed or unreadable input, reported with file and line."""

    def __init__(self, message: str, path=None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line else f"{path}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


def _open(path):
    try:
        return open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read: {exc.strerror}", path) from exc


def guess_format(path, explicit: str | None = None) -> str:
    if explicit:
        return explicit
    return "jsonl" if str(path).endswith((".jsonl", ".json")) else "text"


def read_text_corpus(path) -> list[Sentence]:
    """One sentence per line; line ``n`` becomes id ``L<n>``.  Blank lines are
    skipped but still advance the line count."""
    out = []
    with _open(path) as fh:
        for n, line in enumerate(fh, start=1):
            text = line.rstrip("\r\n")
            if text.strip():
                out.append(Sentence.from_text(f"L{n}", text))
    return out


@dataclass
class JsonlReport:
    skipped: int = 0


def iter_jsonl(path, strict: bool = True, report: JsonlReport | None = None,
               required=("id", "text")) -> Iterator[tuple[int, dict]]:
    with _open(path) as fh:
        for n, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise ValueError("record is not an object")
                missing = [k for k in required if not isinstance(obj.get(k), str)]
                if missing:
                    raise ValueError(f"missing string field(s) {', '.join(missing)}")
            except ValueError as exc:
                if strict:
                    raise InputError(f"malformed JSONL record: {exc}", path, n) from None
                logger.warning("%s:%d: skipping malformed record: %s", path, n, exc)
                if report is not None:
                    report.skipped += 1
                continue
            yield n, obj


def read_jsonl_corpus(path, strict: bool = True, report: JsonlReport | None = None) -> list[Sentence]:
    return [Sentence.from_text(obj["id"], obj["text"])
            for _, obj in iter_jsonl(path, strict, report)]


def read_corpus(path, fmt: str | None = None, strict: bool = True,
                report: JsonlReport | None = None) -> list[Sentence]:
    if guess_format(path, fmt) == "jsonl":
        return read_jsonl_corpus(path, strict, report)
    return read_text_corpus(path)


def read_simplified(path, strict: bool = True, report: JsonlReport | None = None) -> list[SimplifiedSentence]:
    out = []
    for n, obj in iter_jsonl(path, strict, report):
        try:
            out.append(SimplifiedSentence.from_json(obj))
        except (KeyError, TypeError, ValueError) as exc:
            if strict:
                raise InputError(f"bad simplified record: {exc}", path, n) from None
            logger.warning("%s:%d: skipping bad record: %s", path, n, exc)
            if report is not None:
                report.skipped += 1
    return out


def read_stats_records(path, fmt: str | None = None, strict: bool = True) -> list:
    """Plain sentences or simplified records (whichever the file holds)."""
    if guess_format(path, fmt) != "jsonl":
        return read_text_corpus(path)
    records = []
    for n, obj in iter_jsonl(path, strict):
        if "transforms" in obj or "alignment" in obj:
            try:
                records.append(SimplifiedSentence.from_json(obj))
                continue
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"bad simplified record: {exc}", path, n) from None
        records.append(Sentence.from_text(obj["id"], obj["text"]))
    return records


def write_jsonl(path, records: Iterable[SimplifiedSentence]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False, sort_keys=True) + "\n")
            n += 1
    return n


# -- link files -----------------------------------------------------------------


@dataclass(frozen=True)
class LinkRow:
    sentence_id: str
    link_type: str
    head_index: int
    head_text: str
    dep_index: int
    dep_text: str
    line: int


def read_link_file(path) -> dict[str, list[LinkRow]]:
    """TSV: sentence_id, link_type, head_index, head_text, dep_index, dep_text."""
    out: dict[str, list[LinkRow]] = {}
    with _open(path) as fh:
        for n, line in enumerate(fh, start=1):
            raw = line.rstrip("\r\n")
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            cols = raw.split("\t")
            if len(cols) != 6:
                raise InputError(f"expected 6 tab-separated columns, got {len(cols)}", path, n)
            sid, ltype, hi, ht, di, dt = cols
            try:
                row = LinkRow(sid, ltype, int(hi), ht, int(di), dt, n)
            except ValueError:
                raise InputError("token indices must be integers", path, n) from None
            if not ltype or row.head_index < 0 or row.dep_index < 0:
                raise InputError("empty link type or negative index", path, n)
            out.setdefault(sid, []).append(row)
    return out


# -- configuration ---------------------------------------------------------------

_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}

_ORACLE_KEYS = {"oracle": "kind", "oracle_cmd": "command",
                "oracle_pool": "pool_size", "oracle_timeout": "timeout"}


def _coerce(value: str, current):
    if isinstance(current, bool):
        try:
            return _BOOL[value.lower()]
        except KeyError:
            raise ValueError(f"not a boolean: {value!r}") from None
    if isinstance(current, int):
        return int(value)
    if isinstance(current, float):
        return float(value)
    if isinstance(current, tuple):
        return tuple(v.strip() for v in value.split(",") if v.strip())
    return value


def parse_config(path, base: PipelineConfig | None = None) -> PipelineConfig:
    """``key = value`` lines mirroring :class:`PipelineConfig` field names.

    Oracle settings use ``oracle``, ``oracle_cmd``, ``oracle_pool`` and
    ``oracle_timeout``; ``section_indicator_file`` loads a list file.
    """
    from .preprocess import load_section_indicators

    base = base or PipelineConfig()
    known = {f.name for f in fields(PipelineConfig)}
    updates: dict = {}
    oracle_updates: dict = {}
    with _open(path) as fh:
        for n, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                raise InputError("expected key = value", path, n)
            try:
                if key in _ORACLE_KEYS:
                    attr = _ORACLE_KEYS[key]
                    oracle_updates[attr] = _coerce(value, getattr(base.oracle, attr) if attr != "command" else "")
                elif key == "section_indicator_file":
                    updates["section_indicator_list"] = load_section_indicators(
                        Path(path).parent / value)
                elif key in known and key != "oracle":
                    current = getattr(base, key)
                    updates[key] = value if current is None else _coerce(value, current)
                else:
                    raise ValueError(f"unknown key {key!r}")
            except (ValueError, OSError) as exc:
                raise InputError(str(exc), path, n) from None
    if oracle_updates:
        updates["oracle"] = replace(base.oracle, **oracle_updates)
    try:
        return replace(base, **updates)
    except ValueError as exc:
        raise InputError(str(exc), path) from None

