"""Synthetic datasets with planted cross-platform overlap, and the
straight-from-definition oracle the equivalence tests compare against.

Generation plants overlap through per-developer anchor tags. Base item
tags come from two disjoint per-platform pools, so without anchors no
developer has any cross-platform interest in common. A developer chosen
as "aligned" (a deterministic fraction p of the population) gets a unique
anchor tag added to every item they touch on either platform, which makes
their cross-platform score exactly 1 once they have any activity on both
sides. At p=0 every score is exactly 0, at p=1 exactly 1, and between the
endpoints the population mean grows with p.

brute_force_scores reimplements linking, extraction, and every metric
directly from their definitions with plain dict/set algebra. It shares
only the ingest types with the engine; the duplication is deliberate.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
import string
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .ingest import ALL_KINDS, KINDS_A, PLATFORM_A, Dataset, DatasetPaths

logger = logging.getLogger(__name__)

# Filler is purely alphabetic while every generated tag contains digits,
# so filler can never collide with the vocabulary.
FILLER_WORDS = (
    "amber", "basalt", "cedar", "delta", "ember", "fjord", "garnet", "harbor",
    "indigo", "juniper", "kelp", "lagoon", "marble", "nectar", "onyx", "prairie",
    "quarry", "raven", "sierra", "tundra", "umber", "velvet", "willow", "zephyr",
    "anvil", "bridge", "copper", "drift", "eddy", "flint", "grove", "heather",
    "island", "jasper", "knoll", "lantern", "meadow", "nimbus", "orchard", "pebble",
    "quill", "ridge", "summit", "thicket", "upland", "valley", "wharf", "yonder",
)


def _uniform_pair(value, what: str) -> tuple[int, int]:
    try:
        lo, hi = (int(value[0]), int(value[1]))
    except (TypeError, ValueError, IndexError):
        raise ValueError(f"{what} must be a [low, high] integer pair") from None
    if lo < 0 or hi < lo:
        raise ValueError(f"{what} must satisfy 0 <= low <= high, got [{lo}, {hi}]")
    return lo, hi


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one synthetic dataset; identical specs generate
    byte-identical files."""

    n_developers: int
    n_repos: int
    n_questions: int
    vocab_size: int
    tags_per_item: tuple[int, int]
    activities_per_dev: dict[str, tuple[int, int]]  # kind -> [low, high]
    overlap_p: float
    seed: int

    def __post_init__(self):
        for name in ("n_developers", "n_repos", "n_questions", "vocab_size"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")
        if self.vocab_size < 2:
            raise ValueError("vocab_size must be at least 2 (one tag per platform pool)")
        lo, hi = _uniform_pair(self.tags_per_item, "tags_per_item")
        object.__setattr__(self, "tags_per_item", (lo, hi))
        pool = self.vocab_size // 2  # the smaller per-platform pool
        if hi > pool:
            raise ValueError(
                f"tags_per_item upper bound {hi} exceeds the per-platform tag pool ({pool})"
            )
        acts: dict[str, tuple[int, int]] = {}
        for kind, rng in dict(self.activities_per_dev).items():
            if kind not in ALL_KINDS:
                raise ValueError(f"unknown activity kind {kind!r} in activities_per_dev")
            acts[kind] = _uniform_pair(rng, f"activities_per_dev[{kind!r}]")
        object.__setattr__(
            self, "activities_per_dev", {k: acts.get(k, (0, 0)) for k in ALL_KINDS}
        )
        if not 0.0 <= float(self.overlap_p) <= 1.0:
            raise ValueError(f"overlap_p must be in [0, 1], got {self.overlap_p}")

    @classmethod
    def from_json_dict(cls, obj: dict) -> "GenSpec":
        known = {
            "n_developers", "n_repos", "n_questions", "vocab_size",
            "tags_per_item", "activities_per_dev", "overlap_p", "seed",
        }
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown GenSpec fields: {sorted(unknown)}")
        missing = known - set(obj) - {"activities_per_dev", "overlap_p"}
        if missing:
            raise ValueError(f"missing GenSpec fields: {sorted(missing)}")
        return cls(
            n_developers=int(obj["n_developers"]),
            n_repos=int(obj["n_repos"]),
            n_questions=int(obj["n_questions"]),
            vocab_size=int(obj["vocab_size"]),
            tags_per_item=tuple(obj["tags_per_item"]),
            activities_per_dev={k: tuple(v) for k, v in obj.get("activities_per_dev", {}).items()},
            overlap_p=float(obj.get("overlap_p", 0.0)),
            seed=int(obj["seed"]),
        )

    @classmethod
    def from_json_file(cls, path: Path | str) -> "GenSpec":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def generate(spec: GenSpec, out_dir: Path | str) -> DatasetPaths:
    """Write one synthetic dataset (plus planted.jsonl ground truth)."""
    rng = np.random.default_rng(spec.seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = DatasetPaths.from_dir(out)

    pool_tags = [f"tag{i:05d}" for i in range(spec.vocab_size)]
    repo_pool = pool_tags[: (spec.vocab_size + 1) // 2]
    question_pool = pool_tags[(spec.vocab_size + 1) // 2 :]

    n_aligned = int(round(spec.overlap_p * spec.n_developers))
    aligned = set(rng.permutation(spec.n_developers)[:n_aligned].tolist())

    def base_tags(n_items: int, pool: list[str]) -> list[set[str]]:
        lo, hi = spec.tags_per_item
        counts = rng.integers(lo, hi + 1, size=n_items)
        return [
            {pool[t] for t in rng.choice(len(pool), size=int(c), replace=False)}
            for c in counts
        ]

    repo_tags = base_tags(spec.n_repos, repo_pool)
    question_tags = base_tags(spec.n_questions, question_pool)

    # activities, and per-developer touched item sets for anchor stamping
    acts_a: list[tuple[str, str, int]] = []
    acts_b: list[tuple[str, str, int]] = []
    anchors: dict[int, str] = {}
    for i in range(spec.n_developers):
        gh_uid = f"gh{i:06d}"
        so_uid = f"so{i:06d}"
        touched_r: set[int] = set()
        touched_q: set[int] = set()
        for kind in ALL_KINDS:
            lo, hi = spec.activities_per_dev[kind]
            if hi == 0:
                continue
            n = int(rng.integers(lo, hi + 1))
            if n == 0:
                continue
            on_a = kind in KINDS_A
            n_items = spec.n_repos if on_a else spec.n_questions
            items = np.unique(rng.integers(0, n_items, size=n))
            for j in items.tolist():
                if on_a:
                    acts_a.append((gh_uid, kind, j))
                    touched_r.add(j)
                else:
                    acts_b.append((so_uid, kind, j))
                    touched_q.add(j)
        if i in aligned:
            anchor = f"own{i:06d}"
            anchors[i] = anchor
            for j in touched_r:
                repo_tags[j].add(anchor)
            for j in touched_q:
                question_tags[j].add(anchor)

    # All generated strings are plain ASCII identifiers, so rows are
    # assembled with f-strings instead of a JSON encoder; at the largest
    # test sizes this is the difference between seconds and minutes.
    n_words = sum(len(t) for t in repo_tags) + spec.n_repos
    filler = rng.integers(0, len(FILLER_WORDS), size=n_words)
    fi = 0
    with paths.repos.open("w", encoding="utf-8") as fh:
        for j in range(spec.n_repos):
            words: list[str] = []
            for tag in sorted(repo_tags[j]):
                words.append(FILLER_WORDS[filler[fi]])
                fi += 1
                words.append(tag)
            words.append(FILLER_WORDS[filler[fi]])
            fi += 1
            fh.write(f'{{"repo_id": "r{j:06d}", "description": "{" ".join(words)}"}}\n')

    with paths.questions.open("w", encoding="utf-8") as fh:
        for j in range(spec.n_questions):
            tags = ", ".join(f'"{t}"' for t in sorted(question_tags[j]))
            fh.write(f'{{"question_id": "q{j:06d}", "tags": [{tags}]}}\n')

    with paths.users_a.open("w", encoding="utf-8") as fh_a, paths.users_b.open(
        "w", encoding="utf-8"
    ) as fh_b:
        for i in range(spec.n_developers):
            email = f"dev{i:06d}@example.com"
            digest = hashlib.md5(email.encode("utf-8")).hexdigest()
            fh_a.write(f'{{"user_id": "gh{i:06d}", "email": "{email}"}}\n')
            fh_b.write(f'{{"user_id": "so{i:06d}", "email_md5": "{digest}"}}\n')

    with paths.activities_a.open("w", encoding="utf-8") as fh:
        for uid, kind, j in acts_a:
            fh.write(f'{{"user_id": "{uid}", "kind": "{kind}", "item_id": "r{j:06d}"}}\n')
    with paths.activities_b.open("w", encoding="utf-8") as fh:
        for uid, kind, j in acts_b:
            fh.write(f'{{"user_id": "{uid}", "kind": "{kind}", "item_id": "q{j:06d}"}}\n')

    vocabulary = sorted(pool_tags) + sorted(anchors.values())
    paths.tags.write_text("".join(t + "\n" for t in vocabulary), encoding="utf-8")

    with (out / "planted.jsonl").open("w", encoding="utf-8") as fh:
        config = {
            "type": "config",
            "n_aligned": n_aligned,
            "overlap_p": spec.overlap_p,
            "seed": spec.seed,
        }
        fh.write(json.dumps(config, sort_keys=True) + "\n")
        for i in range(spec.n_developers):
            row = {
                "type": "developer",
                "a_user_id": f"gh{i:06d}",
                "b_user_id": f"so{i:06d}",
                "aligned": i in aligned,
                "anchor": anchors.get(i),
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")
        for j in range(spec.n_repos):
            row = {"type": "repo", "repo_id": f"r{j:06d}", "tags": sorted(repo_tags[j])}
            fh.write(json.dumps(row, sort_keys=True) + "\n")
        for j in range(spec.n_questions):
            row = {
                "type": "question",
                "question_id": f"q{j:06d}",
                "tags": sorted(question_tags[j]),
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")

    logger.info(
        "generated %d developers (%d aligned), %d repos, %d questions, %d activities",
        spec.n_developers,
        n_aligned,
        spec.n_repos,
        spec.n_questions,
        len(acts_a) + len(acts_b),
    )
    return paths


# ----------------------------------------------------------------------
# the oracle

_CLS = r"a-z0-9#+.\-"
_ASCII_LOWER = str.maketrans(string.ascii_uppercase, string.ascii_lowercase)

_GH_PAIR = ("fork", "commit", "pull_request", "watch")
_SO_PAIR = ("ask", "answer", "favorite")
_CO = ("fork", "watch", "commit", "pull_request", "answer", "favorite")


def word_boundary_match(description: str, tag: str) -> bool:
    """Reference tag matcher, written as regular expressions.

    A tag occurs when it appears between word boundaries (no adjacent
    [a-z0-9#+.-] characters), optionally followed by trailing periods;
    a hyphenated tag may also appear as its parts in order, separated by
    non-word characters that include no word character. This is the
    documented matching rule restated independently of the tokenizer.
    """
    tag = tag.strip().lower()
    # a tag with characters outside the word alphabet can never equal a token
    if not tag or re.search(rf"[^{_CLS}]", tag):
        return False
    text = description.lower()
    forms = [(tag,)]
    if "-" in tag:
        parts = tuple(tag.split("-"))
        if all(parts):
            forms.append(parts)
    for parts in forms:
        body = rf"[^{_CLS}]+".join(re.escape(p) + r"\.*" for p in parts)
        if re.search(rf"(?<![{_CLS}]){body}(?![{_CLS}])", text):
            return True
    return False


def brute_force_scores(
    dataset: Dataset,
    membership: str = "intersection",
    empty_pair_policy: str = "undefined",
    max_developers: int = 200,
) -> dict[str, dict[str, Fraction | None]]:
    """Every metric for every linked developer, straight from definitions.

    O(n^2) in developers for the co-participation metrics, hence the size
    cap. Returns metric name -> dev_id -> exact score (None = undefined).
    """
    if membership not in ("intersection", "subset"):
        raise ValueError(f"unknown membership mode {membership!r}")
    if empty_pair_policy not in ("undefined", "zero"):
        raise ValueError(f"unknown empty-pair policy {empty_pair_policy!r}")

    # identity linking, redone from the documented rule
    a_by_hash: dict[str, list[str]] = {}
    for uid, email in dataset.users_a.items():
        norm = email.strip().translate(_ASCII_LOWER)
        if norm:
            a_by_hash.setdefault(hashlib.md5(norm.encode("utf-8")).hexdigest(), []).append(uid)
    b_by_hash: dict[str, list[str]] = {}
    for uid, digest in dataset.users_b.items():
        digest = digest.strip().lower()
        if digest:
            b_by_hash.setdefault(digest, []).append(uid)
    pairs = sorted(
        (a_ids[0], b_ids[0])
        for digest, a_ids in a_by_hash.items()
        if (b_ids := b_by_hash.get(digest)) is not None
        and len(a_ids) == 1
        and len(b_ids) == 1
    )
    if len(pairs) > max_developers:
        raise ValueError(
            f"dataset links {len(pairs)} developers, oracle cap is {max_developers}"
        )
    width = max(6, len(str(max(len(pairs) - 1, 0))))
    devs = [(f"d{i:0{width}d}", a, b) for i, (a, b) in enumerate(pairs)]

    # interest extraction, redone from the documented rules
    vocab = dataset.vocabulary
    repo_int = {
        rid: frozenset(t for t in vocab if word_boundary_match(desc, t))
        for rid, desc in dataset.repos.items()
    }
    q_int = {
        qid: frozenset(t.strip().lower() for t in tags) & vocab
        for qid, tags in dataset.questions.items()
    }

    by_dev: dict[str, dict[str, set[str]]] = {
        dev_id: {k: set() for k in ALL_KINDS} for dev_id, _, _ in devs
    }
    a_dev = {a: dev_id for dev_id, a, _ in devs}
    b_dev = {b: dev_id for dev_id, _, b in devs}
    for act in dataset.activities:
        dev_id = (a_dev if act.platform == PLATFORM_A else b_dev).get(act.user_id)
        if dev_id is not None:
            by_dev[dev_id][act.kind].add(act.item_id)

    def union_int(items: set[str], table: dict[str, frozenset[str]]) -> set[str]:
        out: set[str] = set()
        for i in items:
            out |= table[i]
        return out

    def meets(item_tags: frozenset[str], common: set[str]) -> bool:
        if membership == "subset":
            return bool(item_tags) and item_tags <= common
        return not item_tags.isdisjoint(common)

    def ratio(r_items, q_items, one_sided_undefined: bool) -> Fraction | None:
        denom = len(r_items) + len(q_items)
        if denom == 0:
            return None
        if one_sided_undefined and (not r_items or not q_items):
            return None
        ci = union_int(r_items, repo_int) & union_int(q_items, q_int)
        shared = sum(1 for i in r_items if meets(repo_int[i], ci)) + sum(
            1 for i in q_items if meets(q_int[i], ci)
        )
        return Fraction(shared, denom)

    scores: dict[str, dict[str, Fraction | None]] = {"cross": {}}
    for g in _GH_PAIR:
        for s in _SO_PAIR:
            scores[f"pair:{g}:{s}"] = {}
    for k in _CO:
        scores[f"co:{k}"] = {}

    for dev_id, _, _ in devs:
        kinds = by_dev[dev_id]
        all_r = set().union(*(kinds[k] for k in KINDS_A))
        all_q = set().union(*(kinds[k] for k in ALL_KINDS if k not in KINDS_A))
        scores["cross"][dev_id] = ratio(all_r, all_q, one_sided_undefined=False)
        for g in _GH_PAIR:
            for s in _SO_PAIR:
                scores[f"pair:{g}:{s}"][dev_id] = ratio(
                    kinds[g], kinds[s], one_sided_undefined=empty_pair_policy == "undefined"
                )

    for k in _CO:
        table = repo_int if k in KINDS_A else q_int
        for dev_id, _, _ in devs:
            mine = by_dev[dev_id][k]
            neighbors = [
                other
                for other, _, _ in devs
                if other != dev_id and not mine.isdisjoint(by_dev[other][k])
            ]
            if not neighbors:
                scores[f"co:{k}"][dev_id] = None
                continue
            own_tags = union_int(mine, table)
            total = Fraction(0)
            for other in neighbors:
                theirs = by_dev[other][k]
                hits = sum(1 for i in theirs if not table[i].isdisjoint(own_tags))
                total += Fraction(hits, len(theirs))
            scores[f"co:{k}"][dev_id] = total / len(neighbors)

    return scores
