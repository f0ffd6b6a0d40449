"""Link platform-A accounts to platform-B accounts by email hash.

Platform A exposes raw email addresses, platform B only their MD5 hashes.
An account pair links when the MD5 of the normalized (trimmed, ASCII
lowercased) A-side email equals the B-side hash. Lowercasing before hashing
follows the widespread avatar-service convention; hashes produced from
unnormalized addresses will not match, which is an accepted compatibility
caveat. Linking is strictly one-to-one: when a hash value belongs to more
than one account on either side, every account involved is dropped and the
collision is reported instead of being resolved arbitrarily.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import string
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

_ASCII_LOWER = str.maketrans(string.ascii_uppercase, string.ascii_lowercase)


@dataclass(frozen=True)
class LinkedDeveloper:
    """One cross-platform identity in the base-developer population."""

    dev_id: str
    a_user_id: str
    b_user_id: str


@dataclass(frozen=True)
class AmbiguousMatch:
    """A hash shared across platforms by more than one account on some side."""

    email_md5: str
    a_user_ids: tuple[str, ...]
    b_user_ids: tuple[str, ...]


def normalize_email(raw: str) -> str:
    """Trim surrounding whitespace and lowercase ASCII letters only."""
    return raw.strip().translate(_ASCII_LOWER)


def email_md5(raw: str) -> str:
    """Lowercase hex MD5 of the normalized email ("" for empty input)."""
    norm = normalize_email(raw)
    if not norm:
        return ""
    return hashlib.md5(norm.encode("utf-8")).hexdigest()


def link_identities(
    users_a: dict[str, str], users_b: dict[str, str]
) -> tuple[list[LinkedDeveloper], list[AmbiguousMatch]]:
    """Match A-side emails against B-side hashes, one-to-one.

    Returns (links, ambiguities); links carry synthetic dev ids assigned in
    a_user_id order, so the result is independent of input ordering. Users
    with an empty email or hash never participate.
    """
    a_by_hash: dict[str, list[str]] = defaultdict(list)
    for uid, email in users_a.items():
        digest = email_md5(email)
        if digest:
            a_by_hash[digest].append(uid)
    b_by_hash: dict[str, list[str]] = defaultdict(list)
    for uid, digest in users_b.items():
        digest = digest.strip().lower()
        if digest:
            b_by_hash[digest].append(uid)

    pairs: list[tuple[str, str]] = []
    ambiguities: list[AmbiguousMatch] = []
    for digest, a_ids in a_by_hash.items():
        b_ids = b_by_hash.get(digest)
        if b_ids is None:
            continue
        if len(a_ids) == 1 and len(b_ids) == 1:
            pairs.append((a_ids[0], b_ids[0]))
        else:
            ambiguities.append(
                AmbiguousMatch(
                    email_md5=digest,
                    a_user_ids=tuple(sorted(a_ids)),
                    b_user_ids=tuple(sorted(b_ids)),
                )
            )

    pairs.sort()
    width = max(6, len(str(max(len(pairs) - 1, 0))))
    links = [
        LinkedDeveloper(dev_id=f"d{i:0{width}d}", a_user_id=a, b_user_id=b)
        for i, (a, b) in enumerate(pairs)
    ]
    ambiguities.sort(key=lambda m: m.email_md5)
    logger.info("linked %d developers (%d ambiguous hash groups dropped)", len(links), len(ambiguities))
    return links, ambiguities


def write_links_csv(links: list[LinkedDeveloper], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dev_id", "a_user_id", "b_user_id"])
        for link in links:
            writer.writerow([link.dev_id, link.a_user_id, link.b_user_id])


def write_ambiguities_csv(ambiguities: list[AmbiguousMatch], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["email_md5", "a_user_ids", "b_user_ids"])
        for amb in ambiguities:
            writer.writerow([amb.email_md5, ";".join(amb.a_user_ids), ";".join(amb.b_user_ids)])
