"""Load and validate the line-delimited input tables.

The canonical input directory holds seven UTF-8 files:

  users_a.jsonl       {"user_id": str, "email": str}
  users_b.jsonl       {"user_id": str, "email_md5": str}
  repos.jsonl         {"repo_id": str, "description": str}
  questions.jsonl     {"question_id": str, "tags": [str, ...]}
  activities_a.jsonl  {"user_id": str, "kind": fork|watch|commit|pull_request,
                       "item_id": str, "timestamp": str?}
  activities_b.jsonl  {"user_id": str, "kind": ask|answer|favorite,
                       "item_id": str, "timestamp": str?}
  tags.txt            one tag per line (the full tag vocabulary)

Timestamps are accepted and discarded: every downstream statistic is over
sets of items, never multiplicities, so duplicate (user, kind, item) records
collapse to one. Loading validates referential integrity (activity item ids
must resolve in the matching catalog) and primary-key uniqueness; activity
user ids are not required to appear in the user tables.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from .interests import normalize_tag

logger = logging.getLogger(__name__)

PLATFORM_A = "A"
PLATFORM_B = "B"
KINDS_A = ("fork", "watch", "commit", "pull_request")
KINDS_B = ("ask", "answer", "favorite")
ALL_KINDS = KINDS_A + KINDS_B
KIND_PLATFORM = {k: PLATFORM_A for k in KINDS_A} | {k: PLATFORM_B for k in KINDS_B}

_HEX = set("0123456789abcdef")


class DatasetError(ValueError):
    """Raised for malformed input files or referential integrity failures."""

    def __init__(self, message: str, path: str | Path | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f"{Path(path).name}"
            if line is not None:
                loc += f":{line}"
            loc += ": "
        super().__init__(loc + message)


@dataclass(frozen=True, order=True)
class ActivityRecord:
    """One developer action: (platform, kind, user, item), set semantics."""

    platform: str
    kind: str
    user_id: str
    item_id: str


@dataclass(frozen=True)
class DatasetPaths:
    users_a: Path
    users_b: Path
    repos: Path
    questions: Path
    activities_a: Path
    activities_b: Path
    tags: Path

    @classmethod
    def from_dir(cls, directory: str | Path) -> "DatasetPaths":
        d = Path(directory)
        return cls(
            users_a=d / "users_a.jsonl",
            users_b=d / "users_b.jsonl",
            repos=d / "repos.jsonl",
            questions=d / "questions.jsonl",
            activities_a=d / "activities_a.jsonl",
            activities_b=d / "activities_b.jsonl",
            tags=d / "tags.txt",
        )

    def all(self) -> tuple[Path, ...]:
        return (
            self.users_a,
            self.users_b,
            self.repos,
            self.questions,
            self.activities_a,
            self.activities_b,
            self.tags,
        )


@dataclass(frozen=True)
class Dataset:
    """Validated, immutable snapshot of one input directory.

    ``activities`` is deduplicated and canonically sorted, so datasets that
    differ only in input line order compare equal.
    """

    users_a: dict[str, str]
    users_b: dict[str, str]
    repos: dict[str, str]
    questions: dict[str, tuple[str, ...]]
    activities: tuple[ActivityRecord, ...]
    vocabulary: frozenset[str]

    def counts(self) -> dict[str, int]:
        return {
            "users_a": len(self.users_a),
            "users_b": len(self.users_b),
            "repos": len(self.repos),
            "questions": len(self.questions),
            "activities": len(self.activities),
            "vocabulary": len(self.vocabulary),
        }


def _iter_jsonl(path: Path):
    try:
        fh = open(path, "r", encoding="utf-8")
    except FileNotFoundError:
        raise DatasetError("file not found", path) from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"malformed line: {exc.msg}", path, lineno) from None
            if not isinstance(obj, dict):
                raise DatasetError("malformed line: expected a JSON object", path, lineno)
            yield lineno, obj


def _req_str(obj: dict, key: str, path: Path, lineno: int) -> str:
    val = obj.get(key)
    if not isinstance(val, str):
        raise DatasetError(f"missing or non-string field {key!r}", path, lineno)
    return val


def _load_users_a(path: Path) -> dict[str, str]:
    users: dict[str, str] = {}
    for lineno, obj in _iter_jsonl(path):
        uid = _req_str(obj, "user_id", path, lineno)
        email = _req_str(obj, "email", path, lineno)
        if not uid:
            raise DatasetError("empty user_id", path, lineno)
        if uid in users:
            raise DatasetError(f"duplicate user_id {uid!r}", path, lineno)
        users[uid] = email
    return users


def _load_users_b(path: Path) -> dict[str, str]:
    users: dict[str, str] = {}
    for lineno, obj in _iter_jsonl(path):
        uid = _req_str(obj, "user_id", path, lineno)
        md5 = _req_str(obj, "email_md5", path, lineno).lower()
        if not uid:
            raise DatasetError("empty user_id", path, lineno)
        if uid in users:
            raise DatasetError(f"duplicate user_id {uid!r}", path, lineno)
        if md5 and (len(md5) != 32 or not set(md5) <= _HEX):
            raise DatasetError(f"email_md5 must be empty or 32 hex chars, got {md5!r}", path, lineno)
        users[uid] = md5
    return users


def _load_repos(path: Path) -> dict[str, str]:
    repos: dict[str, str] = {}
    for lineno, obj in _iter_jsonl(path):
        rid = _req_str(obj, "repo_id", path, lineno)
        desc = _req_str(obj, "description", path, lineno)
        if not rid:
            raise DatasetError("empty repo_id", path, lineno)
        if rid in repos:
            raise DatasetError(f"duplicate repo_id {rid!r}", path, lineno)
        repos[rid] = desc
    return repos


def _load_questions(path: Path) -> dict[str, tuple[str, ...]]:
    questions: dict[str, tuple[str, ...]] = {}
    for lineno, obj in _iter_jsonl(path):
        qid = _req_str(obj, "question_id", path, lineno)
        tags = obj.get("tags")
        if not isinstance(tags, list) or any(not isinstance(t, str) for t in tags):
            raise DatasetError("field 'tags' must be a list of strings", path, lineno)
        if not qid:
            raise DatasetError("empty question_id", path, lineno)
        if qid in questions:
            raise DatasetError(f"duplicate question_id {qid!r}", path, lineno)
        questions[qid] = tuple(tags)
    return questions


def _load_activities(path: Path, platform: str, kinds: tuple[str, ...], items: dict) -> set[ActivityRecord]:
    records: set[ActivityRecord] = set()
    for lineno, obj in _iter_jsonl(path):
        uid = _req_str(obj, "user_id", path, lineno)
        kind = _req_str(obj, "kind", path, lineno)
        item = _req_str(obj, "item_id", path, lineno)
        if "timestamp" in obj and not isinstance(obj["timestamp"], str):
            raise DatasetError("field 'timestamp' must be a string when present", path, lineno)
        if not uid:
            raise DatasetError("empty user_id", path, lineno)
        if kind not in kinds:
            raise DatasetError(f"kind {kind!r} is not valid for platform {platform}", path, lineno)
        if item not in items:
            raise DatasetError(
                f"dangling reference {item}: activity ({uid!r}, {kind!r}) names an unknown item",
                path,
                lineno,
            )
        records.add(ActivityRecord(platform=platform, kind=kind, user_id=uid, item_id=item))
    return records


def _load_vocabulary(path: Path) -> frozenset[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DatasetError("file not found", path) from None
    return frozenset(t for t in (normalize_tag(line) for line in text.splitlines()) if t)


def load_dataset(source: str | Path | DatasetPaths) -> Dataset:
    """Load and validate one input directory (or explicit path set)."""
    paths = source if isinstance(source, DatasetPaths) else DatasetPaths.from_dir(source)
    users_a = _load_users_a(paths.users_a)
    users_b = _load_users_b(paths.users_b)
    repos = _load_repos(paths.repos)
    questions = _load_questions(paths.questions)
    activities = _load_activities(paths.activities_a, PLATFORM_A, KINDS_A, repos)
    activities |= _load_activities(paths.activities_b, PLATFORM_B, KINDS_B, questions)
    vocabulary = _load_vocabulary(paths.tags)
    ds = Dataset(
        users_a=users_a,
        users_b=users_b,
        repos=repos,
        questions=questions,
        activities=tuple(sorted(activities)),
        vocabulary=vocabulary,
    )
    logger.info("loaded dataset: %s", ds.counts())
    return ds


def write_dataset(dataset: Dataset, out_dir: str | Path) -> DatasetPaths:
    """Serialize a dataset back to the canonical files (sorted, deduplicated)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = DatasetPaths.from_dir(out)

    def dump(path: Path, rows) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True) + "\n")

    dump(paths.users_a, ({"user_id": u, "email": e} for u, e in sorted(dataset.users_a.items())))
    dump(paths.users_b, ({"user_id": u, "email_md5": h} for u, h in sorted(dataset.users_b.items())))
    dump(paths.repos, ({"repo_id": r, "description": d} for r, d in sorted(dataset.repos.items())))
    dump(paths.questions, ({"question_id": q, "tags": list(t)} for q, t in sorted(dataset.questions.items())))
    acts_a = [a for a in dataset.activities if a.platform == PLATFORM_A]
    acts_b = [a for a in dataset.activities if a.platform == PLATFORM_B]
    dump(paths.activities_a, ({"user_id": a.user_id, "kind": a.kind, "item_id": a.item_id} for a in acts_a))
    dump(paths.activities_b, ({"user_id": a.user_id, "kind": a.kind, "item_id": a.item_id} for a in acts_b))
    paths.tags.write_text("".join(t + "\n" for t in sorted(dataset.vocabulary)), encoding="utf-8")
    return paths
