"""Data model and ingestion for rated NLG corpora.

A corpus row pairs a dialogue-act meaning representation (MR) with one
system output, its human reference texts, three 1-6 ratings per quality
dimension, and an optional externally computed parse score.
"""

from __future__ import annotations

import csv
import json
import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)

DIMENSIONS = ("informativeness", "naturalness", "quality")
_DIM_PREFIX = {"informativeness": "inf", "naturalness": "nat", "quality": "qual"}

CSV_COLUMNS = (
    "instance_id", "pair_key", "dataset", "system", "mr", "output", "references",
    "inf_1", "inf_2", "inf_3", "nat_1", "nat_2", "nat_3",
    "qual_1", "qual_2", "qual_3", "parse_score",
)
REFERENCE_DELIMITER = "|~"


class MRParseError(ValueError):
    """Malformed MR string; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class CorpusLoadError(ValueError):
    """Invalid corpus file; ``row`` is the 1-based data row when known."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(f"row {row}: {message}" if row is not None else message)
        self.row = row


@dataclass(frozen=True, eq=False)
class MeaningRepresentation:
    """Dialogue-act type plus ordered slot/value pairs."""

    act_type: str
    slots: tuple[tuple[str, str | None], ...]
    raw: str = ""

    def __eq__(self, other):
        if not isinstance(other, MeaningRepresentation):
            return NotImplemented
        return self.act_type == other.act_type and Counter(self.slots) == Counter(other.slots)

    def __hash__(self):
        return hash((self.act_type, frozenset(Counter(self.slots).items())))

    @property
    def is_inform(self) -> bool:
        return self.act_type.startswith("inform")

    def serialize(self) -> str:
        parts = [n if v is None else f"{n}={v}" for n, v in self.slots]
        return f"{self.act_type}({', '.join(parts)})"


def parse_mr(text: str) -> MeaningRepresentation:
    """Parse ``act(name=value, flag, ...)``; values may contain spaces."""
    open_i = text.find("(")
    if open_i == -1:
        raise MRParseError("missing '('", offset=len(text))
    act = text[:open_i].strip()
    if not act:
        raise MRParseError("empty act type", offset=0)
    close_i = text.rfind(")")
    if close_i < open_i:
        raise MRParseError("missing ')'", offset=len(text))
    if text[close_i + 1 :].strip():
        raise MRParseError("trailing text after ')'", offset=close_i + 1)
    inner = text[open_i + 1 : close_i]
    if "(" in inner or ")" in inner:
        raise MRParseError("unbalanced parentheses", offset=open_i + 1 + min(
            i for i, ch in enumerate(inner) if ch in "()"))

    slots: list[tuple[str, str | None]] = []
    if inner.strip():
        offset = open_i + 1
        for part in inner.split(","):
            name, eq, value = part.partition("=")
            name = name.strip()
            if not name:
                raise MRParseError("empty slot name", offset=offset)
            slots.append((name, value.strip() if eq else None))
            offset += len(part) + 1
    return MeaningRepresentation(act, tuple(slots), raw=text)


@dataclass(frozen=True)
class RatingTriple:
    """Three raters' 1-6 scores for one dimension."""

    scores: tuple[int, int, int]
    dimension: str

    def __post_init__(self):
        if self.dimension not in DIMENSIONS:
            raise ValueError(f"unknown dimension {self.dimension!r}")
        if len(self.scores) != 3:
            raise ValueError(f"expected 3 scores, got {len(self.scores)}")
        for s in self.scores:
            if not isinstance(s, int) or not 1 <= s <= 6:
                raise ValueError(f"rating {s!r} outside [1,6]")

    @property
    def median(self) -> int:
        return sorted(self.scores)[1]


def median_rating(triple: RatingTriple) -> int:
    return triple.median


@dataclass(frozen=True)
class Instance:
    """One MR / system-output pair with references and judgments."""

    instance_id: str
    dataset: str
    system: str
    mr: MeaningRepresentation
    output: str
    references: tuple[str, ...]
    ratings: dict  # dimension -> RatingTriple
    parse_score: float | None = None
    pair_key: str | None = None

    def __post_init__(self):
        if not self.references:
            raise ValueError(f"instance {self.instance_id}: references empty")
        missing = [d for d in DIMENSIONS if d not in self.ratings]
        if missing:
            raise ValueError(f"instance {self.instance_id}: missing ratings {missing}")

    def median(self, dimension: str) -> int:
        return self.ratings[dimension].median


@dataclass
class Corpus:
    instances: tuple[Instance, ...]
    embedding_table: dict | None = None
    dictionary: frozenset | None = None

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    @property
    def datasets(self) -> tuple[str, ...]:
        seen = dict.fromkeys(inst.dataset for inst in self.instances)
        return tuple(seen)

    @property
    def systems(self) -> tuple[str, ...]:
        seen = dict.fromkeys(inst.system for inst in self.instances)
        return tuple(seen)

    def medians(self, dimension: str) -> list[int]:
        return [inst.median(dimension) for inst in self.instances]

    def pair_groups(self) -> dict[str, list[int]]:
        """pair_key -> instance indices, source order preserved."""
        groups: dict[str, list[int]] = {}
        for i, inst in enumerate(self.instances):
            if inst.pair_key is not None:
                groups.setdefault(inst.pair_key, []).append(i)
        return groups

    def integrity_issues(self) -> list[str]:
        """Pair-key violations: a key must group exactly 2 instances from
        different systems."""
        issues = []
        for key, idxs in self.pair_groups().items():
            if len(idxs) != 2:
                issues.append(f"pair_key {key!r} groups {len(idxs)} instances, expected 2")
            elif self.instances[idxs[0]].system == self.instances[idxs[1]].system:
                issues.append(f"pair_key {key!r} groups two outputs of the same system")
        return issues


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _parse_rating(raw, column: str) -> int:
    try:
        value = int(str(raw).strip())
    except (TypeError, ValueError):
        raise ValueError(f"column {column}: rating {raw!r} is not an integer")
    if not 1 <= value <= 6:
        raise ValueError(f"column {column}: rating {value} outside [1,6]")
    return value


def _row_to_instance(row: dict, references: list[str]) -> Instance:
    for col in ("instance_id", "dataset", "system", "mr", "output"):
        if not str(row.get(col, "") or "").strip():
            raise ValueError(f"column {col}: missing value")
    refs = tuple(_nfc(r) for r in references if r != "")
    if not refs:
        raise ValueError("column references: no reference strings")
    ratings = {}
    for dim in DIMENSIONS:
        prefix = _DIM_PREFIX[dim]
        scores = tuple(_parse_rating(row[f"{prefix}_{i}"], f"{prefix}_{i}") for i in (1, 2, 3))
        ratings[dim] = RatingTriple(scores, dim)
    raw_ps = str(row.get("parse_score", "") or "").strip()
    parse_score = float(raw_ps) if raw_ps else None
    pair_key = str(row.get("pair_key", "") or "").strip() or None
    return Instance(
        instance_id=str(row["instance_id"]).strip(),
        dataset=str(row["dataset"]).strip(),
        system=str(row["system"]).strip(),
        mr=parse_mr(_nfc(str(row["mr"]))),
        output=_nfc(str(row["output"])),
        references=refs,
        ratings=ratings,
        parse_score=parse_score,
        pair_key=pair_key,
    )


def _iter_csv_rows(path: Path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise CorpusLoadError(f"missing required columns: {', '.join(missing)}")
        for i, row in enumerate(reader, start=1):
            refs = (row.get("references") or "").split(REFERENCE_DELIMITER)
            yield i, row, refs


def _iter_json_rows(path: Path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise CorpusLoadError("top-level JSON value must be an array of objects")
    for i, row in enumerate(data, start=1):
        if not isinstance(row, dict):
            raise CorpusLoadError("array element is not an object", row=i)
        refs = row.get("references")
        if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
            raise CorpusLoadError("references must be an array of strings", row=i)
        yield i, row, refs


def load_corpus(path, format: str | None = None, lenient: bool = False) -> Corpus:
    """Load and validate a corpus file.

    ``format`` is inferred from the suffix when omitted.  A malformed row
    aborts the load unless ``lenient``, in which case it is logged and
    skipped.
    """
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    if format not in ("csv", "json"):
        raise ValueError(f"unknown format {format!r}")
    rows = _iter_csv_rows(path) if format == "csv" else _iter_json_rows(path)

    instances: list[Instance] = []
    seen_ids: set[str] = set()
    for rownum, row, refs in rows:
        try:
            inst = _row_to_instance(row, refs)
            if inst.instance_id in seen_ids:
                raise ValueError(f"duplicate instance_id {inst.instance_id!r}")
        except (ValueError, MRParseError) as exc:
            if lenient:
                log.warning("skipping row %d: %s", rownum, exc)
                continue
            raise CorpusLoadError(str(exc), row=rownum) from exc
        seen_ids.add(inst.instance_id)
        instances.append(inst)
    return Corpus(instances=tuple(instances))


def scan_corpus(path, format: str | None = None) -> tuple[Corpus, list[str]]:
    """Collect every row-level and corpus-level violation without aborting.

    Returns the corpus built from the valid rows plus a list of diagnostics
    (empty for a clean file).
    """
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    rows = _iter_csv_rows(path) if format == "csv" else _iter_json_rows(path)
    issues: list[str] = []
    instances: list[Instance] = []
    seen_ids: set[str] = set()
    for rownum, row, refs in rows:
        try:
            inst = _row_to_instance(row, refs)
            if inst.instance_id in seen_ids:
                raise ValueError(f"duplicate instance_id {inst.instance_id!r}")
        except (ValueError, MRParseError) as exc:
            issues.append(f"row {rownum}: {exc}")
            continue
        seen_ids.add(inst.instance_id)
        instances.append(inst)
    corpus = Corpus(instances=tuple(instances))
    issues.extend(corpus.integrity_issues())
    return corpus, issues


def load_embeddings(path) -> dict:
    """Text embedding table, one ``word v1 v2 ... vd`` per line."""
    table: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            word, vec = parts[0], parts[1:]
            if dim is None:
                dim = len(vec)
                if dim == 0:
                    raise ValueError(f"line {lineno}: no vector components")
            elif len(vec) != dim:
                raise ValueError(f"line {lineno}: expected {dim} components, got {len(vec)}")
            table[word] = np.array([float(v) for v in vec])
    if not table:
        raise ValueError("embedding file contains no vectors")
    return table


def load_dictionary(path) -> frozenset:
    """Word list, one lowercase word per line."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(w.strip() for w in fh if w.strip())


def load_synonyms(path) -> dict:
    """Synonym lexicon, one ``word:syn1,syn2,...`` per line."""
    table: dict[str, frozenset] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            word, sep, syns = line.partition(":")
            if not sep or not word.strip():
                raise ValueError(f"line {lineno}: expected 'word:syn1,syn2,...'")
            table[word.strip()] = frozenset(
                s.strip() for s in syns.split(",") if s.strip())
    return table
