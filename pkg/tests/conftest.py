"""Shared fixtures: the two worked examples and small generated datasets.

Worked example 1 (cross-platform): one developer forks repos A ("java",
"android") and B ("java"), watches C ("c#"), favorites questions D
("android") and F ("ios"), answers E ("java"). Common interests are
{java, android}, the shared sets are {A, B} and {D, E}, and the score is
(2+2)/(3+3) = 2/3.

Worked example 2 (co-participation): developer d watches A ("java") and
B ("android"); d' watches B, C ("java", "ios"), and D ("c#"). They
co-watch B, d's watched-tag union is {java, android}, so d' contributes
{B, C} out of its three watches: the co-watch score of d is 2/3.
"""

import hashlib
import json
from pathlib import Path

import pytest

from interset import (
    ScoreEngine,
    TagVocabulary,
    build_indices,
    extract_item_interests,
    link_identities,
    load_dataset,
)
from interset.synthgen import GenSpec, generate

VOCAB = ("java", "android", "ios", "c#")


def md5_of(email: str) -> str:
    return hashlib.md5(email.strip().lower().encode("utf-8")).hexdigest()


def write_jsonl(path: Path, rows) -> None:
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")


def write_vocab(d: Path, tags=VOCAB) -> None:
    (d / "tags.txt").write_text("".join(t + "\n" for t in tags), encoding="utf-8")


def build_example1(d: Path) -> Path:
    d.mkdir(parents=True, exist_ok=True)
    email = "Dev.One@Example.com"
    write_jsonl(d / "users_a.jsonl", [{"user_id": "gh1", "email": email}])
    write_jsonl(d / "users_b.jsonl", [{"user_id": "so1", "email_md5": md5_of(email)}])
    write_jsonl(
        d / "repos.jsonl",
        [
            {"repo_id": "A", "description": "a tidy java and android toolkit"},
            {"repo_id": "B", "description": "java build helper"},
            {"repo_id": "C", "description": "c# windows service"},
        ],
    )
    write_jsonl(
        d / "questions.jsonl",
        [
            {"question_id": "D", "tags": ["android"]},
            {"question_id": "E", "tags": ["java"]},
            {"question_id": "F", "tags": ["ios"]},
        ],
    )
    write_jsonl(
        d / "activities_a.jsonl",
        [
            {"user_id": "gh1", "kind": "fork", "item_id": "A"},
            {"user_id": "gh1", "kind": "fork", "item_id": "B"},
            {"user_id": "gh1", "kind": "watch", "item_id": "C"},
        ],
    )
    write_jsonl(
        d / "activities_b.jsonl",
        [
            {"user_id": "so1", "kind": "favorite", "item_id": "D"},
            {"user_id": "so1", "kind": "answer", "item_id": "E"},
            {"user_id": "so1", "kind": "favorite", "item_id": "F"},
        ],
    )
    write_vocab(d)
    return d


def build_example2(d: Path) -> Path:
    d.mkdir(parents=True, exist_ok=True)
    users_a, users_b = [], []
    for name in ("d", "dp"):
        email = f"{name}@example.com"
        users_a.append({"user_id": f"gh_{name}", "email": email})
        users_b.append({"user_id": f"so_{name}", "email_md5": md5_of(email)})
    write_jsonl(d / "users_a.jsonl", users_a)
    write_jsonl(d / "users_b.jsonl", users_b)
    write_jsonl(
        d / "repos.jsonl",
        [
            {"repo_id": "A", "description": "plain java app"},
            {"repo_id": "B", "description": "android sdk samples"},
            {"repo_id": "C", "description": "java and ios bridge"},
            {"repo_id": "D", "description": "c# desktop tool"},
        ],
    )
    write_jsonl(d / "questions.jsonl", [])
    write_jsonl(
        d / "activities_a.jsonl",
        [
            {"user_id": "gh_d", "kind": "watch", "item_id": "A"},
            {"user_id": "gh_d", "kind": "watch", "item_id": "B"},
            {"user_id": "gh_dp", "kind": "watch", "item_id": "B"},
            {"user_id": "gh_dp", "kind": "watch", "item_id": "C"},
            {"user_id": "gh_dp", "kind": "watch", "item_id": "D"},
        ],
    )
    write_jsonl(d / "activities_b.jsonl", [])
    write_vocab(d)
    return d


def build_combined(d: Path) -> Path:
    """Both worked examples in one dataset, item ids disambiguated."""
    d.mkdir(parents=True, exist_ok=True)
    users_a, users_b = [{"user_id": "gh_a1", "email": "one@example.com"}], [
        {"user_id": "so_a1", "email_md5": md5_of("one@example.com")}
    ]
    for name in ("d", "dp"):
        email = f"{name}@example.com"
        users_a.append({"user_id": f"gh_{name}", "email": email})
        users_b.append({"user_id": f"so_{name}", "email_md5": md5_of(email)})
    write_jsonl(d / "users_a.jsonl", users_a)
    write_jsonl(d / "users_b.jsonl", users_b)
    write_jsonl(
        d / "repos.jsonl",
        [
            {"repo_id": "rA", "description": "a tidy java and android toolkit"},
            {"repo_id": "rB", "description": "java build helper"},
            {"repo_id": "rC", "description": "c# windows service"},
            {"repo_id": "wA", "description": "plain java app"},
            {"repo_id": "wB", "description": "android sdk samples"},
            {"repo_id": "wC", "description": "java and ios bridge"},
            {"repo_id": "wD", "description": "c# desktop tool"},
        ],
    )
    write_jsonl(
        d / "questions.jsonl",
        [
            {"question_id": "qD", "tags": ["android"]},
            {"question_id": "qE", "tags": ["java"]},
            {"question_id": "qF", "tags": ["ios"]},
        ],
    )
    write_jsonl(
        d / "activities_a.jsonl",
        [
            {"user_id": "gh_a1", "kind": "fork", "item_id": "rA"},
            {"user_id": "gh_a1", "kind": "fork", "item_id": "rB"},
            {"user_id": "gh_a1", "kind": "watch", "item_id": "rC"},
            {"user_id": "gh_d", "kind": "watch", "item_id": "wA"},
            {"user_id": "gh_d", "kind": "watch", "item_id": "wB"},
            {"user_id": "gh_dp", "kind": "watch", "item_id": "wB"},
            {"user_id": "gh_dp", "kind": "watch", "item_id": "wC"},
            {"user_id": "gh_dp", "kind": "watch", "item_id": "wD"},
        ],
    )
    write_jsonl(
        d / "activities_b.jsonl",
        [
            {"user_id": "so_a1", "kind": "favorite", "item_id": "qD"},
            {"user_id": "so_a1", "kind": "answer", "item_id": "qE"},
            {"user_id": "so_a1", "kind": "favorite", "item_id": "qF"},
        ],
    )
    write_vocab(d)
    return d


def make_engine(directory: Path, **opts):
    """(dataset, links, engine) for one input directory."""
    dataset = load_dataset(directory)
    links, _ = link_identities(dataset.users_a, dataset.users_b)
    vocab = TagVocabulary.build(dataset.vocabulary)
    catalog = extract_item_interests(dataset, vocab)
    engine = ScoreEngine(build_indices(dataset, links, catalog), **opts)
    return dataset, links, engine


def dev_by_a_user(links, a_user_id: str) -> str:
    return next(l.dev_id for l in links if l.a_user_id == a_user_id)


SMALL_ACTIVITIES = {
    "fork": (0, 3),
    "watch": (0, 3),
    "commit": (0, 2),
    "pull_request": (0, 2),
    "ask": (0, 2),
    "answer": (0, 3),
    "favorite": (0, 3),
}


def gen_dataset(
    base: Path,
    seed: int,
    n_developers: int = 50,
    n_repos: int = 200,
    n_questions: int = 200,
    vocab_size: int = 40,
    overlap_p: float = 0.5,
    activities=SMALL_ACTIVITIES,
    tags_per_item=(1, 3),
) -> Path:
    spec = GenSpec(
        n_developers=n_developers,
        n_repos=n_repos,
        n_questions=n_questions,
        vocab_size=vocab_size,
        tags_per_item=tags_per_item,
        activities_per_dev=dict(activities),
        overlap_p=overlap_p,
        seed=seed,
    )
    out = base / f"gen{seed}"
    generate(spec, out)
    return out


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels(tmp_path_factory):
    """Run one tiny batch first so jit compilation cost never lands inside
    a timed test."""
    directory = build_example1(tmp_path_factory.mktemp("warm") / "a1")
    make_engine(directory)[2].score_table()


@pytest.fixture()
def a1_dir(tmp_path) -> Path:
    return build_example1(tmp_path / "a1")


@pytest.fixture()
def a2_dir(tmp_path) -> Path:
    return build_example2(tmp_path / "a2")


@pytest.fixture()
def combined_dir(tmp_path) -> Path:
    return build_combined(tmp_path / "combined")
