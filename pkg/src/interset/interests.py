"""Interest extraction: vocabulary tags found in text and on questions.

Matching rule, shared by match_tag and the vocabulary scanner:

* Text is lowercased and split into tokens: maximal runs of
  [a-z0-9#+.-]. Anything else is a separator.
* A token matches a tag part when it equals the part followed only by
  trailing periods, so sentence punctuation ("java.", "node.js.") does
  not hide a tag, while "javascript" never matches "java".
* A tag matches when some token matches the whole tag, or, for a
  hyphenated tag like "ruby-on-rails", when its hyphen-separated parts
  match a consecutive run of tokens ("ruby on rails").

Question interests are the normalized question tags restricted to the
vocabulary; repository interests are the vocabulary tags matched in the
repository description.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .identity import LinkedDeveloper
    from .ingest import Dataset

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"[a-z0-9#+.\-]+")


def normalize_tag(raw: str) -> str:
    return raw.strip().lower()


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def _tag_forms(tag: str) -> list[tuple[str, ...]]:
    """Token sequences that count as an occurrence of the tag."""
    forms: list[tuple[str, ...]] = [(tag,)]
    if "-" in tag:
        parts = tuple(tag.split("-"))
        if all(parts):
            forms.append(parts)
    return forms


def _part_matches(token: str, part: str) -> bool:
    if not token.startswith(part):
        return False
    rest = token[len(part) :]
    return not rest.strip(".")


def _window_match(tokens: list[str], i: int, parts: tuple[str, ...]) -> bool:
    if i + len(parts) > len(tokens):
        return False
    return all(_part_matches(tokens[i + j], p) for j, p in enumerate(parts))


def match_tag(description: str, tag: str) -> bool:
    """True when the normalized tag occurs in the description."""
    tag = normalize_tag(tag)
    if not tag:
        return False
    tokens = tokenize(description)
    forms = _tag_forms(tag)
    return any(
        _window_match(tokens, i, parts) for i in range(len(tokens)) for parts in forms
    )


def _dot_prefixes(token: str):
    """The token, then the token with trailing periods peeled one by one."""
    yield token
    while token.endswith("."):
        token = token[:-1]
        yield token


@dataclass(frozen=True)
class TagVocabulary:
    """A tag set indexed for one-pass scanning of descriptions."""

    tags: frozenset[str]
    _single: dict[str, tuple[str, ...]]
    _multi: dict[str, tuple[tuple[tuple[str, ...], str], ...]]

    @classmethod
    def build(cls, raw_tags) -> "TagVocabulary":
        tags = frozenset(normalize_tag(t) for t in raw_tags if normalize_tag(t))
        single: dict[str, list[str]] = {}
        multi: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        for tag in sorted(tags):
            for parts in _tag_forms(tag):
                if len(parts) == 1:
                    single.setdefault(parts[0], []).append(tag)
                else:
                    multi.setdefault(parts[0], []).append((parts, tag))
        return cls(
            tags=tags,
            _single={k: tuple(v) for k, v in single.items()},
            _multi={k: tuple(v) for k, v in multi.items()},
        )

    def __contains__(self, tag: str) -> bool:
        return tag in self.tags

    def __len__(self) -> int:
        return len(self.tags)

    def matches(self, description: str) -> frozenset[str]:
        """All vocabulary tags occurring in the description."""
        tokens = tokenize(description)
        found: set[str] = set()
        for i, token in enumerate(tokens):
            for key in _dot_prefixes(token):
                hit = self._single.get(key)
                if hit:
                    found.update(hit)
                for parts, tag in self._multi.get(key, ()):
                    if tag not in found and _window_match(tokens, i, parts):
                        found.add(tag)
        return frozenset(found)


def question_interests(tags, vocab: TagVocabulary) -> frozenset[str]:
    return frozenset(normalize_tag(t) for t in tags) & vocab.tags


def repo_interests(description: str, vocab: TagVocabulary) -> frozenset[str]:
    return vocab.matches(description)


@dataclass(frozen=True)
class ItemCatalog:
    """Interest set of every item, keyed by item id."""

    repos: dict[str, frozenset[str]]
    questions: dict[str, frozenset[str]]


def extract_item_interests(dataset: "Dataset", vocab: TagVocabulary) -> ItemCatalog:
    repos = {rid: repo_interests(desc, vocab) for rid, desc in dataset.repos.items()}
    questions = {qid: question_interests(tags, vocab) for qid, tags in dataset.questions.items()}
    logger.info(
        "extracted interests for %d repos, %d questions (%d tags)",
        len(repos),
        len(questions),
        len(vocab),
    )
    return ItemCatalog(repos=repos, questions=questions)


@dataclass(frozen=True)
class DeveloperInterests:
    """One linked developer's touched items and per-platform tag unions."""

    dev_id: str
    repo_items: dict[str, frozenset[str]]  # kind -> item ids
    question_items: dict[str, frozenset[str]]
    repos: frozenset[str]  # union over kinds
    questions: frozenset[str]
    repo_interest_union: frozenset[str]
    question_interest_union: frozenset[str]


def developer_interests(
    link: "LinkedDeveloper", dataset: "Dataset", catalog: ItemCatalog
) -> DeveloperInterests:
    from .ingest import KINDS_A, KINDS_B, PLATFORM_A

    repo_items: dict[str, set[str]] = {k: set() for k in KINDS_A}
    question_items: dict[str, set[str]] = {k: set() for k in KINDS_B}
    for act in dataset.activities:
        if act.platform == PLATFORM_A:
            if act.user_id == link.a_user_id:
                repo_items[act.kind].add(act.item_id)
        elif act.user_id == link.b_user_id:
            question_items[act.kind].add(act.item_id)
    repos = frozenset().union(*repo_items.values())
    questions = frozenset().union(*question_items.values())
    return DeveloperInterests(
        dev_id=link.dev_id,
        repo_items={k: frozenset(v) for k, v in repo_items.items()},
        question_items={k: frozenset(v) for k, v in question_items.items()},
        repos=repos,
        questions=questions,
        repo_interest_union=frozenset().union(*(catalog.repos[r] for r in repos))
        if repos
        else frozenset(),
        question_interest_union=frozenset().union(*(catalog.questions[q] for q in questions))
        if questions
        else frozenset(),
    )


def write_interest_dump(catalog: ItemCatalog, path: Path | str) -> None:
    """Sorted JSONL audit of every item's extracted interest set."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for platform, table in (("a", catalog.repos), ("b", catalog.questions)):
            for item_id in sorted(table):
                row = {"item_id": item_id, "platform": platform, "tags": sorted(table[item_id])}
                fh.write(json.dumps(row, sort_keys=True) + "\n")
