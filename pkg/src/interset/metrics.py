"""Similarity scores over the built indices.

Three families, all exact rationals:

* cross: shared fraction of a developer's items across both platforms,
  judged against the common interests of the two platform-wide unions.
* pair:<gh>:<so>: the same score recomputed with the item sets (and hence
  the common-interest set) restricted to one activity kind per platform.
* co:<kind>: mean over co-participants o of the fraction of o's kind-items
  that share a tag with the developer's own kind-items.

Scores can be undefined (None): a zero denominator, an empty restricted
side under the default pair policy, or an empty co-participant set. The
per-developer methods recompute everything with plain Python sets; the
batch paths run the compiled kernels and assemble the same rationals from
integer counts, so the two routes must agree bit for bit.
"""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .index import Csr, IndexBundle
from .ingest import ALL_KINDS, KINDS_A

logger = logging.getLogger(__name__)

GH_PAIR_KINDS = ("fork", "commit", "pull_request", "watch")
SO_PAIR_KINDS = ("ask", "answer", "favorite")
CO_KINDS = ("fork", "watch", "commit", "pull_request", "answer", "favorite")

MEMBERSHIP_MODES = ("intersection", "subset")
EMPTY_PAIR_POLICIES = ("undefined", "zero")

CROSS_METRIC = "cross"


def pair_metric(gh_kind: str, so_kind: str) -> str:
    return f"pair:{gh_kind}:{so_kind}"


def co_metric(kind: str) -> str:
    return f"co:{kind}"


METRICS: tuple[str, ...] = (
    CROSS_METRIC,
    *(pair_metric(g, s) for g in GH_PAIR_KINDS for s in SO_PAIR_KINDS),
    *(co_metric(k) for k in CO_KINDS),
)

SCORES_CSV_HEADER = (
    "dev_id",
    "metric",
    "value",
    "shared_r",
    "shared_q",
    "denom_r",
    "denom_q",
    "neighbors",
)


def select_metrics(selection: str) -> tuple[str, ...]:
    """Expand a CLI selection word into canonical metric names."""
    if selection == "all":
        return METRICS
    if selection == "cross":
        return (CROSS_METRIC,)
    if selection in ("pairs", "co"):
        prefix = "pair:" if selection == "pairs" else "co:"
        return tuple(m for m in METRICS if m.startswith(prefix))
    raise ValueError(f"unknown metric selection {selection!r}")


def _check_metrics(metrics) -> tuple[str, ...]:
    if metrics is None:
        return METRICS
    unknown = set(metrics) - set(METRICS)
    if unknown:
        raise ValueError(f"unknown metrics: {sorted(unknown)}")
    return tuple(m for m in METRICS if m in set(metrics))


@dataclass(frozen=True)
class CrossPlatformScore:
    dev_id: str
    ci: frozenset[str]
    shared_r_count: int
    shared_q_count: int
    denom_r: int
    denom_q: int
    score: Fraction | None


@dataclass(frozen=True)
class PairScore:
    dev_id: str
    gh_kind: str
    so_kind: str
    ci: frozenset[str]
    shared_r_count: int
    shared_q_count: int
    denom_r: int
    denom_q: int
    score: Fraction | None


@dataclass(frozen=True)
class CoParticipationScore:
    dev_id: str
    kind: str
    neighbor_count: int
    score: Fraction | None


def format_value(value: Fraction | None) -> str:
    return "undefined" if value is None else f"{float(value):.6f}"


class ScoreEngine:
    """Scores one IndexBundle under a fixed configuration."""

    def __init__(
        self,
        bundle: IndexBundle,
        membership: str = "intersection",
        empty_pair_policy: str = "undefined",
        threads: int = 1,
    ):
        if membership not in MEMBERSHIP_MODES:
            raise ValueError(f"unknown membership mode {membership!r}")
        if empty_pair_policy not in EMPTY_PAIR_POLICIES:
            raise ValueError(f"unknown empty-pair policy {empty_pair_policy!r}")
        if threads < 1:
            raise ValueError("threads must be >= 1")
        self._b = bundle
        self.membership = membership
        self.empty_pair_policy = empty_pair_policy
        self.threads = threads

    # ------------------------------------------------------------------
    # per-developer API (plain Python sets, exact)

    def _dev(self, dev_id: str) -> int:
        return self._b.devs.id_of(dev_id)

    def _tag_union(self, items: np.ndarray, item_tags: Csr) -> set[int]:
        out: set[int] = set()
        for i in items.tolist():
            out.update(item_tags.row(i).tolist())
        return out

    def _meets(self, item_tags: np.ndarray, common: set[int]) -> bool:
        tags = item_tags.tolist()
        if self.membership == "subset":
            return bool(tags) and all(t in common for t in tags)
        return any(t in common for t in tags)

    def _ci_ints(self, d: int, r_csr: Csr, q_csr: Csr) -> set[int]:
        gh = self._tag_union(r_csr.row(d), self._b.repo_tags)
        so = self._tag_union(q_csr.row(d), self._b.question_tags)
        return gh & so

    def _tag_names(self, tag_ints: set[int]) -> frozenset[str]:
        return frozenset(self._b.tags.values[t] for t in tag_ints)

    def common_interests(self, dev_id: str) -> frozenset[str]:
        d = self._dev(dev_id)
        return self._tag_names(self._ci_ints(d, self._b.dev_repos, self._b.dev_questions))

    def _shared_int_sets(self, d: int, r_csr: Csr, q_csr: Csr) -> tuple[list[int], list[int], set[int]]:
        ci = self._ci_ints(d, r_csr, q_csr)
        b = self._b
        sh_r = [i for i in r_csr.row(d).tolist() if self._meets(b.repo_tags.row(i), ci)]
        sh_q = [i for i in q_csr.row(d).tolist() if self._meets(b.question_tags.row(i), ci)]
        return sh_r, sh_q, ci

    def shared_items(self, dev_id: str) -> tuple[frozenset[str], frozenset[str]]:
        d = self._dev(dev_id)
        sh_r, sh_q, _ = self._shared_int_sets(d, self._b.dev_repos, self._b.dev_questions)
        b = self._b
        return (
            frozenset(b.repos.values[i] for i in sh_r),
            frozenset(b.questions.values[i] for i in sh_q),
        )

    def cross_platform_similarity(self, dev_id: str) -> CrossPlatformScore:
        d = self._dev(dev_id)
        b = self._b
        sh_r, sh_q, ci = self._shared_int_sets(d, b.dev_repos, b.dev_questions)
        denom_r = b.dev_repos.row_size(d)
        denom_q = b.dev_questions.row_size(d)
        denom = denom_r + denom_q
        score = Fraction(len(sh_r) + len(sh_q), denom) if denom else None
        return CrossPlatformScore(
            dev_id=dev_id,
            ci=self._tag_names(ci),
            shared_r_count=len(sh_r),
            shared_q_count=len(sh_q),
            denom_r=denom_r,
            denom_q=denom_q,
            score=score,
        )

    def _pair_defined(self, denom_r: int, denom_q: int) -> bool:
        if denom_r + denom_q == 0:
            return False
        if self.empty_pair_policy == "undefined" and (denom_r == 0 or denom_q == 0):
            return False
        return True

    def pair_similarity(self, dev_id: str, gh_kind: str, so_kind: str) -> PairScore:
        if gh_kind not in GH_PAIR_KINDS or so_kind not in SO_PAIR_KINDS:
            raise ValueError(f"invalid activity pair ({gh_kind!r}, {so_kind!r})")
        d = self._dev(dev_id)
        b = self._b
        r_csr = b.dev_items[gh_kind]
        q_csr = b.dev_items[so_kind]
        sh_r, sh_q, ci = self._shared_int_sets(d, r_csr, q_csr)
        denom_r = r_csr.row_size(d)
        denom_q = q_csr.row_size(d)
        if self._pair_defined(denom_r, denom_q):
            score: Fraction | None = Fraction(len(sh_r) + len(sh_q), denom_r + denom_q)
        else:
            score = None
        return PairScore(
            dev_id=dev_id,
            gh_kind=gh_kind,
            so_kind=so_kind,
            ci=self._tag_names(ci),
            shared_r_count=len(sh_r),
            shared_q_count=len(sh_q),
            denom_r=denom_r,
            denom_q=denom_q,
            score=score,
        )

    def co_participants(self, dev_id: str, kind: str) -> frozenset[str]:
        if kind not in ALL_KINDS:
            raise ValueError(f"unknown activity kind {kind!r}")
        b = self._b
        d = self._dev(dev_id)
        out: set[int] = set()
        item_devs = b.item_devs[kind]
        for i in b.dev_items[kind].row(d).tolist():
            out.update(item_devs.row(i).tolist())
        out.discard(d)
        return frozenset(b.devs.values[x] for x in out)

    def shared_activity_items(self, dev_id: str, other_id: str, kind: str) -> frozenset[str]:
        """Items of other_id (kind k) sharing a tag with dev_id's kind-k items."""
        if kind not in ALL_KINDS:
            raise ValueError(f"unknown activity kind {kind!r}")
        b = self._b
        d = self._dev(dev_id)
        o = self._dev(other_id)
        item_tags = b.repo_tags if kind in KINDS_A else b.question_tags
        items = b.item_interner(kind)
        own = self._tag_union(b.dev_items[kind].row(d), item_tags)
        shared = [
            i
            for i in b.dev_items[kind].row(o).tolist()
            if not own.isdisjoint(item_tags.row(i).tolist())
        ]
        return frozenset(items.values[i] for i in shared)

    def co_participation_similarity(self, dev_id: str, kind: str) -> CoParticipationScore:
        if kind not in CO_KINDS:
            if kind == "ask":
                raise ValueError("kind 'ask' has no co-participation score")
            raise ValueError(f"unknown activity kind {kind!r}")
        b = self._b
        d = self._dev(dev_id)
        dev_items = b.dev_items[kind]
        neighbors = sorted(
            b.devs.ids[n] for n in self.co_participants(dev_id, kind)
        )
        if not neighbors:
            return CoParticipationScore(dev_id=dev_id, kind=kind, neighbor_count=0, score=None)
        item_tags = b.repo_tags if kind in KINDS_A else b.question_tags
        own = self._tag_union(dev_items.row(d), item_tags)
        total = Fraction(0)
        for o in neighbors:
            row = dev_items.row(o).tolist()
            cnt = sum(1 for i in row if not own.isdisjoint(item_tags.row(i).tolist()))
            total += Fraction(cnt, len(row))
        return CoParticipationScore(
            dev_id=dev_id,
            kind=kind,
            neighbor_count=len(neighbors),
            score=total / len(neighbors),
        )

    # ------------------------------------------------------------------
    # batch API (kernel-backed, exact)

    def _chunks(self, n: int) -> list[tuple[int, int]]:
        if n == 0:
            return []
        parts = min(n, self.threads * 4 if self.threads > 1 else 1)
        bounds = np.linspace(0, n, parts + 1).astype(np.int64)
        return [(int(a), int(e)) for a, e in zip(bounds[:-1], bounds[1:]) if e > a]

    def _run_chunked(self, n: int, worker) -> None:
        chunks = self._chunks(n)
        if self.threads == 1 or len(chunks) <= 1:
            for c in chunks:
                worker(c)
            return
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            # list() re-raises any worker exception
            list(pool.map(worker, chunks))

    def _batch_cross_pair(self, r_csr: Csr, q_csr: Csr) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        b = self._b
        n = len(b.devs)
        out_sr = np.zeros(n, np.int64)
        out_sq = np.zeros(n, np.int64)
        subset = 1 if self.membership == "subset" else 0

        def worker(chunk: tuple[int, int]) -> None:
            kernels.cross_pair_stats(
                chunk[0],
                chunk[1],
                r_csr.indptr,
                r_csr.indices,
                q_csr.indptr,
                q_csr.indices,
                b.repo_tags.indptr,
                b.repo_tags.indices,
                b.question_tags.indptr,
                b.question_tags.indices,
                len(b.tags),
                subset,
                out_sr,
                out_sq,
            )

        self._run_chunked(n, worker)
        return out_sr, out_sq, np.diff(r_csr.indptr), np.diff(q_csr.indptr)

    def _batch_co(self, kind: str) -> list[tuple[int, Fraction | None]]:
        b = self._b
        n = len(b.devs)
        dev_items = b.dev_items[kind]
        item_devs = b.item_devs[kind]
        item_tags = b.repo_tags if kind in KINDS_A else b.question_tags
        n_items = len(b.item_interner(kind))
        out: list[tuple[int, Fraction | None]] = [(0, None)] * n

        def worker(chunk: tuple[int, int]) -> None:
            tag_mark = np.zeros(len(b.tags), np.int64)
            dev_mark = np.zeros(n, np.int64)
            item_mark = np.zeros(n_items, np.int64)
            item_ok = np.zeros(n_items, np.int64)
            nb_buf = np.zeros(n, np.int64)
            shared_buf = np.zeros(n, np.int64)
            deg_buf = np.zeros(n, np.int64)
            epoch = 0
            for d in range(chunk[0], chunk[1]):
                epoch += 1
                nn = int(
                    kernels.co_neighbor_stats(
                        d,
                        epoch,
                        dev_items.indptr,
                        dev_items.indices,
                        item_devs.indptr,
                        item_devs.indices,
                        item_tags.indptr,
                        item_tags.indices,
                        tag_mark,
                        dev_mark,
                        item_mark,
                        item_ok,
                        nb_buf,
                        shared_buf,
                        deg_buf,
                    )
                )
                if nn == 0:
                    continue
                total = Fraction(0)
                for j in range(nn):
                    total += Fraction(int(shared_buf[j]), int(deg_buf[j]))
                out[d] = (nn, total / nn)

        self._run_chunked(n, worker)
        return out

    def _metric_stats(self, metrics: tuple[str, ...]) -> dict[str, object]:
        """Batch stats for the requested metrics, keyed by metric name."""
        b = self._b
        stats: dict[str, object] = {}
        for metric in metrics:
            if metric == CROSS_METRIC:
                stats[metric] = self._batch_cross_pair(b.dev_repos, b.dev_questions)
            elif metric.startswith("pair:"):
                _, g, s = metric.split(":")
                stats[metric] = self._batch_cross_pair(b.dev_items[g], b.dev_items[s])
            else:
                stats[metric] = self._batch_co(metric.split(":", 1)[1])
        return stats

    def _assemble(self, metric: str, stats: object, d: int) -> tuple[Fraction | None, tuple]:
        """(score, csv count columns) for developer index d."""
        if metric.startswith("co:"):
            nn, score = stats[d]  # type: ignore[index]
            return score, ("", "", "", "", nn)
        sr, sq, dr, dq = stats  # type: ignore[misc]
        shared_r = int(sr[d])
        shared_q = int(sq[d])
        denom_r = int(dr[d])
        denom_q = int(dq[d])
        if metric == CROSS_METRIC:
            defined = denom_r + denom_q > 0
        else:
            defined = self._pair_defined(denom_r, denom_q)
        score = Fraction(shared_r + shared_q, denom_r + denom_q) if defined else None
        return score, (shared_r, shared_q, denom_r, denom_q, "")

    def score_table(self, metrics=None) -> dict[str, dict[str, Fraction | None]]:
        """metric -> dev_id -> exact score (None when undefined)."""
        wanted = _check_metrics(metrics)
        stats = self._metric_stats(wanted)
        devs = self._b.devs.values
        table: dict[str, dict[str, Fraction | None]] = {}
        for metric in wanted:
            ms = stats[metric]
            table[metric] = {
                dev_id: self._assemble(metric, ms, d)[0] for d, dev_id in enumerate(devs)
            }
        return table

    def iter_score_rows(self, metrics=None):
        """Yield scores.csv rows, developer-major, metrics in canonical order."""
        wanted = _check_metrics(metrics)
        stats = self._metric_stats(wanted)
        per_metric = [(m, stats[m]) for m in wanted]
        for d, dev_id in enumerate(self._b.devs.values):
            for metric, ms in per_metric:
                score, counts = self._assemble(metric, ms, d)
                yield (dev_id, metric, format_value(score), *counts)


def write_scores_csv(engine: ScoreEngine, path: Path | str, metrics=None) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCORES_CSV_HEADER)
        writer.writerows(engine.iter_score_rows(metrics))
    logger.info("wrote %s", path)
