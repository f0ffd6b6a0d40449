"""Dense-id interning and the inverted participation indices.

String ids are interned to dense integers once, at build time; every hot
set operation downstream runs on sorted int64 CSR arrays. The participation
index stores, per activity kind, both directions (item -> developers and
developer -> items) restricted to the linked base developers; the tag-item
index inverts the per-item interest sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .identity import LinkedDeveloper
from .ingest import ALL_KINDS, KINDS_A, PLATFORM_A, Dataset
from .interests import ItemCatalog

logger = logging.getLogger(__name__)


class Csr(NamedTuple):
    """Row-sorted adjacency: indices[indptr[i]:indptr[i+1]] is row i."""

    indptr: np.ndarray
    indices: np.ndarray

    def row(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def row_size(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])


def csr_from_pairs(n_rows: int, rows: np.ndarray, cols: np.ndarray) -> Csr:
    """Build a deduplicated CSR from (row, col) pairs."""
    indptr = np.zeros(n_rows + 1, np.int64)
    if rows.size == 0:
        return Csr(indptr, np.empty(0, np.int64))
    order = np.lexsort((cols, rows))
    r = rows[order]
    c = cols[order]
    keep = np.ones(r.size, bool)
    keep[1:] = (r[1:] != r[:-1]) | (c[1:] != c[:-1])
    r = r[keep]
    c = c[keep]
    np.cumsum(np.bincount(r, minlength=n_rows), out=indptr[1:])
    return Csr(indptr, np.ascontiguousarray(c))


def transpose_pairs(csr: Csr, n_rows: int, n_cols: int) -> Csr:
    rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(csr.indptr))
    return csr_from_pairs(n_cols, csr.indices, rows)


@dataclass(frozen=True)
class Interner:
    """Bidirectional string <-> dense int mapping, sorted for determinism."""

    values: tuple[str, ...]
    ids: dict[str, int]

    @classmethod
    def build(cls, values) -> "Interner":
        vs = tuple(sorted(set(values)))
        return cls(values=vs, ids={v: i for i, v in enumerate(vs)})

    def __len__(self) -> int:
        return len(self.values)

    def id_of(self, value: str) -> int:
        try:
            return self.ids[value]
        except KeyError:
            raise KeyError(f"unknown id {value!r}") from None


@dataclass(frozen=True)
class IndexBundle:
    """Everything the scoring engine needs, in interned CSR form."""

    devs: Interner
    repos: Interner
    questions: Interner
    tags: Interner
    links: tuple[LinkedDeveloper, ...]
    dev_items: dict[str, Csr]  # kind -> developer -> items of that kind
    item_devs: dict[str, Csr]  # kind -> item -> developers
    dev_repos: Csr  # union over the four platform-A kinds
    dev_questions: Csr  # union over the three platform-B kinds
    repo_tags: Csr
    question_tags: Csr
    tag_repos: Csr
    tag_questions: Csr

    def item_interner(self, kind: str) -> Interner:
        return self.repos if kind in KINDS_A else self.questions


def _interest_csr(n_items: int, interner: Interner, tag_ids: dict[str, int], table: dict[str, frozenset[str]]) -> Csr:
    rows: list[int] = []
    cols: list[int] = []
    for item_id, tags in table.items():
        i = interner.ids[item_id]
        for t in tags:
            rows.append(i)
            cols.append(tag_ids[t])
    return csr_from_pairs(n_items, np.asarray(rows, np.int64), np.asarray(cols, np.int64))


def build_indices(dataset: Dataset, links: list[LinkedDeveloper], catalog: ItemCatalog) -> IndexBundle:
    devs = Interner.build(link.dev_id for link in links)
    repos = Interner.build(dataset.repos)
    questions = Interner.build(dataset.questions)
    tags = Interner.build(dataset.vocabulary)

    a_to_dev = {link.a_user_id: devs.ids[link.dev_id] for link in links}
    b_to_dev = {link.b_user_id: devs.ids[link.dev_id] for link in links}

    pairs: dict[str, tuple[list[int], list[int]]] = {k: ([], []) for k in ALL_KINDS}
    for act in dataset.activities:
        if act.platform == PLATFORM_A:
            dev = a_to_dev.get(act.user_id)
            item_ids = repos.ids
        else:
            dev = b_to_dev.get(act.user_id)
            item_ids = questions.ids
        if dev is None:
            continue  # activity by a non-linked user
        drow, irow = pairs[act.kind]
        drow.append(dev)
        irow.append(item_ids[act.item_id])

    n_devs = len(devs)
    dev_items: dict[str, Csr] = {}
    item_devs: dict[str, Csr] = {}
    for kind in ALL_KINDS:
        n_items = len(repos) if kind in KINDS_A else len(questions)
        drow, irow = pairs[kind]
        d_arr = np.asarray(drow, np.int64)
        i_arr = np.asarray(irow, np.int64)
        dev_items[kind] = csr_from_pairs(n_devs, d_arr, i_arr)
        item_devs[kind] = csr_from_pairs(n_items, i_arr, d_arr)

    def union_csr(kinds: tuple[str, ...], n_items: int) -> Csr:
        d_all = np.concatenate([np.asarray(pairs[k][0], np.int64) for k in kinds])
        i_all = np.concatenate([np.asarray(pairs[k][1], np.int64) for k in kinds])
        return csr_from_pairs(n_devs, d_all, i_all)

    dev_repos = union_csr(KINDS_A, len(repos))
    dev_questions = union_csr(tuple(k for k in ALL_KINDS if k not in KINDS_A), len(questions))

    repo_tags = _interest_csr(len(repos), repos, tags.ids, catalog.repos)
    question_tags = _interest_csr(len(questions), questions, tags.ids, catalog.questions)

    bundle = IndexBundle(
        devs=devs,
        repos=repos,
        questions=questions,
        tags=tags,
        links=tuple(sorted(links, key=lambda l: l.dev_id)),
        dev_items=dev_items,
        item_devs=item_devs,
        dev_repos=dev_repos,
        dev_questions=dev_questions,
        repo_tags=repo_tags,
        question_tags=question_tags,
        tag_repos=transpose_pairs(repo_tags, len(repos), len(tags)),
        tag_questions=transpose_pairs(question_tags, len(questions), len(tags)),
    )
    logger.info(
        "indexed %d developers, %d repos, %d questions, %d tags",
        n_devs,
        len(repos),
        len(questions),
        len(tags),
    )
    return bundle


class ParticipationIndex:
    """String-id query layer over the per-kind participation CSRs."""

    def __init__(self, bundle: IndexBundle):
        self._b = bundle

    def _check_kind(self, kind: str) -> None:
        if kind not in ALL_KINDS:
            raise ValueError(f"unknown activity kind {kind!r}")

    def items_of(self, dev_id: str, kind: str) -> frozenset[str]:
        self._check_kind(kind)
        b = self._b
        d = b.devs.id_of(dev_id)
        items = b.item_interner(kind)
        return frozenset(items.values[i] for i in b.dev_items[kind].row(d))

    def participants_of(self, item_id: str, kind: str) -> frozenset[str]:
        self._check_kind(kind)
        b = self._b
        i = b.item_interner(kind).id_of(item_id)
        return frozenset(b.devs.values[d] for d in b.item_devs[kind].row(i))

    def co_participants(self, dev_id: str, kind: str) -> frozenset[str]:
        """Every other developer sharing at least one kind-k item with dev_id."""
        self._check_kind(kind)
        b = self._b
        d = b.devs.id_of(dev_id)
        out: set[int] = set()
        item_devs = b.item_devs[kind]
        for i in b.dev_items[kind].row(d):
            out.update(item_devs.row(i).tolist())
        out.discard(d)
        return frozenset(b.devs.values[x] for x in out)


class TagItemIndex:
    """tag -> items whose interest set contains the tag, per platform."""

    def __init__(self, bundle: IndexBundle):
        self._b = bundle

    def items_with(self, tag: str, platform: str) -> frozenset[str]:
        b = self._b
        t = b.tags.id_of(tag)
        if platform == PLATFORM_A:
            return frozenset(b.repos.values[i] for i in b.tag_repos.row(t))
        return frozenset(b.questions.values[i] for i in b.tag_questions.row(t))
