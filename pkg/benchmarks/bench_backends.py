"""Benchmark the compiled kernels against the pure-Python fallback.

Generates a synthetic dataset, builds the scoring engine once, then times
the full score batch (cross + 12 pairs + 6 co-participation metrics) under
each available backend. The first compiled run includes jit compilation,
so every backend gets one untimed warmup pass.

Usage:
    python3 benchmarks/bench_backends.py --developers 5000 --repeats 3
"""

import argparse
import statistics
import sys
import tempfile
import time
from pathlib import Path

from interset import (
    GenSpec,
    ScoreEngine,
    TagVocabulary,
    build_indices,
    extract_item_interests,
    generate,
    kernels,
    link_identities,
    load_dataset,
)


def build_engine(n_developers: int, seed: int, threads: int, work_dir: Path) -> ScoreEngine:
    spec = GenSpec(
        n_developers=n_developers,
        n_repos=n_developers // 2,
        n_questions=n_developers // 2,
        vocab_size=200,
        tags_per_item=(1, 3),
        activities_per_dev={
            "fork": (1, 3),
            "watch": (1, 3),
            "commit": (0, 2),
            "pull_request": (0, 1),
            "ask": (0, 1),
            "answer": (1, 3),
            "favorite": (1, 3),
        },
        overlap_p=0.5,
        seed=seed,
    )
    data_dir = work_dir / "dataset"
    generate(spec, data_dir)
    dataset = load_dataset(data_dir)
    links, _ = link_identities(dataset.users_a, dataset.users_b)
    vocab = TagVocabulary.build(dataset.vocabulary)
    catalog = extract_item_interests(dataset, vocab)
    return ScoreEngine(build_indices(dataset, links, catalog), threads=threads)


def time_backend(engine: ScoreEngine, backend: str, repeats: int) -> list[float]:
    kernels.set_backend(backend)
    engine.score_table()  # warmup: jit compilation / cache load
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        engine.score_table()
        times.append(time.perf_counter() - t0)
    return times


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--developers", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args(argv)

    previous = kernels.get_backend()
    with tempfile.TemporaryDirectory(prefix="interset-bench-") as tmp:
        print(f"building engine: {args.developers} developers, seed {args.seed}")
        engine = build_engine(args.developers, args.seed, args.threads, Path(tmp))
        results = {}
        try:
            for backend in kernels.available_backends():
                times = time_backend(engine, backend, args.repeats)
                results[backend] = times
                print(
                    f"{backend:>8}: best {min(times):7.3f}s  "
                    f"median {statistics.median(times):7.3f}s  ({args.repeats} runs)"
                )
        finally:
            kernels.set_backend(previous)
    if {"numba", "python"} <= set(results):
        speedup = statistics.median(results["python"]) / statistics.median(results["numba"])
        print(f"speedup (median python / median numba): {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
