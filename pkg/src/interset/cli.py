"""Command-line pipeline: link, extract, score, report, and helpers.

Exit codes: 0 success, 1 validation or data error, 2 usage error. All
output files are byte-stable for fixed inputs and configuration.
Configuration precedence: command-line flags, then --config JSON file,
then built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .identity import link_identities, write_ambiguities_csv, write_links_csv
from .index import build_indices
from .ingest import Dataset, DatasetError, load_dataset
from .interests import TagVocabulary, extract_item_interests, write_interest_dump
from .metrics import ScoreEngine, select_metrics, write_scores_csv
from .report import read_scores_csv, summarize_scores, write_plotdata, write_summary_json
from .synthgen import GenSpec, brute_force_scores, generate

logger = logging.getLogger(__name__)

_CONFIG_KEYS = ("membership", "empty_pair_policy", "threads")
_DEFAULTS = {"membership": "intersection", "empty_pair_policy": "undefined", "threads": 1}


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    try:
        obj = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValueError(f"{p}: file not found") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{p}: malformed JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ValueError(f"{p}: config must be a JSON object")
    unknown = set(obj) - set(_CONFIG_KEYS)
    if unknown:
        raise ValueError(f"{p}: unknown config keys: {sorted(unknown)}")
    return obj


def _engine_options(args) -> dict:
    config = _load_config(getattr(args, "config", None))
    opts = {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        opts[key] = flag if flag is not None else config.get(key, _DEFAULTS[key])
    opts["threads"] = int(opts["threads"])
    return opts


def _build_engine(dataset: Dataset, opts: dict) -> ScoreEngine:
    links, _ = link_identities(dataset.users_a, dataset.users_b)
    vocab = TagVocabulary.build(dataset.vocabulary)
    catalog = extract_item_interests(dataset, vocab)
    bundle = build_indices(dataset, links, catalog)
    return ScoreEngine(bundle, **opts)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_link(args) -> int:
    dataset = load_dataset(args.input)
    links, ambiguities = link_identities(dataset.users_a, dataset.users_b)
    out = _out_dir(args)
    write_links_csv(links, out / "links.csv")
    write_ambiguities_csv(ambiguities, out / "ambiguities.csv")
    return 0


def _cmd_extract(args) -> int:
    dataset = load_dataset(args.input)
    vocab = TagVocabulary.build(dataset.vocabulary)
    catalog = extract_item_interests(dataset, vocab)
    write_interest_dump(catalog, _out_dir(args) / "interests.jsonl")
    return 0


def _cmd_score(args) -> int:
    dataset = load_dataset(args.input)
    engine = _build_engine(dataset, _engine_options(args))
    metrics = select_metrics(args.selection)
    write_scores_csv(engine, _out_dir(args) / "scores.csv", metrics)
    return 0


def _cmd_report(args) -> int:
    table = read_scores_csv(args.scores)
    summaries = summarize_scores(table)
    out = _out_dir(args)
    write_summary_json(summaries, out / "summary.json")
    write_plotdata(summaries, out / "plotdata")
    return 0


def _cmd_generate(args) -> int:
    spec = GenSpec.from_json_file(args.spec)
    generate(spec, args.out)
    return 0


def _cmd_oracle_check(args) -> int:
    dataset = load_dataset(args.input)
    opts = _engine_options(args)
    expected = brute_force_scores(
        dataset,
        membership=opts["membership"],
        empty_pair_policy=opts["empty_pair_policy"],
        max_developers=args.max_developers,
    )
    actual = _build_engine(dataset, opts).score_table()
    mismatches = []
    total = 0
    for metric, per_dev in expected.items():
        for dev_id, want in per_dev.items():
            total += 1
            got = actual[metric][dev_id]
            if got != want:
                mismatches.append((metric, dev_id, want, got))
    print(f"{len(mismatches)} mismatches across {total} scores")
    for metric, dev_id, want, got in mismatches[:5]:
        print(f"mismatch: {metric} {dev_id}: oracle {want} engine {got}", file=sys.stderr)
    return 1 if mismatches else 0


def _cmd_all(args) -> int:
    dataset = load_dataset(args.input)
    out = _out_dir(args)
    links, ambiguities = link_identities(dataset.users_a, dataset.users_b)
    write_links_csv(links, out / "links.csv")
    write_ambiguities_csv(ambiguities, out / "ambiguities.csv")
    vocab = TagVocabulary.build(dataset.vocabulary)
    catalog = extract_item_interests(dataset, vocab)
    write_interest_dump(catalog, out / "interests.jsonl")
    bundle = build_indices(dataset, links, catalog)
    engine = ScoreEngine(bundle, **_engine_options(args))
    scores_path = out / "scores.csv"
    write_scores_csv(engine, scores_path)
    summaries = summarize_scores(read_scores_csv(scores_path))
    write_summary_json(summaries, out / "summary.json")
    write_plotdata(summaries, out / "plotdata")
    return 0


def _add_engine_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file (flags take precedence)")
    sub.add_argument(
        "--membership",
        choices=("intersection", "subset"),
        help="how an item's interests must relate to the common set (default: intersection)",
    )
    sub.add_argument(
        "--empty-pair-policy",
        dest="empty_pair_policy",
        choices=("undefined", "zero"),
        help="pair score when one activity side is empty (default: undefined)",
    )
    sub.add_argument("--threads", type=int, help="worker threads (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interset",
        description="Link developer identities across two platforms and score interest similarity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    link = commands.add_parser("link", help="link identities, write links.csv")
    link.add_argument("--input", required=True, help="dataset directory")
    link.add_argument("--out", required=True, help="output directory")
    link.set_defaults(func=_cmd_link)

    extract = commands.add_parser("extract", help="extract item interests, write interests.jsonl")
    extract.add_argument("--input", required=True, help="dataset directory")
    extract.add_argument("--out", required=True, help="output directory")
    extract.set_defaults(func=_cmd_extract)

    score = commands.add_parser("score", help="compute similarity scores, write scores.csv")
    score.add_argument(
        "selection",
        nargs="?",
        default="all",
        choices=("all", "cross", "pairs", "co"),
        help="which metric family to compute (default: all)",
    )
    score.add_argument("--input", required=True, help="dataset directory")
    score.add_argument("--out", required=True, help="output directory")
    _add_engine_flags(score)
    score.set_defaults(func=_cmd_score)

    report = commands.add_parser("report", help="summarize scores.csv, write summary + plotdata")
    report.add_argument("--scores", required=True, help="scores.csv path")
    report.add_argument("--out", required=True, help="output directory")
    report.set_defaults(func=_cmd_report)

    gen = commands.add_parser("generate", help="generate a synthetic dataset")
    gen.add_argument("--spec", required=True, help="GenSpec JSON file")
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=_cmd_generate)

    oracle = commands.add_parser(
        "oracle-check", help="compare the engine against the brute-force oracle"
    )
    oracle.add_argument("--input", required=True, help="dataset directory")
    oracle.add_argument(
        "--max-developers",
        dest="max_developers",
        type=int,
        default=200,
        help="oracle size cap (default: 200)",
    )
    _add_engine_flags(oracle)
    oracle.set_defaults(func=_cmd_oracle_check)

    full = commands.add_parser("all", help="run link, extract, score, report in one pass")
    full.add_argument("--input", required=True, help="dataset directory")
    full.add_argument("--out", required=True, help="output directory")
    _add_engine_flags(full)
    full.set_defaults(func=_cmd_all)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (DatasetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
