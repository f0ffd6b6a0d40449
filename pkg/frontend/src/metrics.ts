/**
 * Metric file-name slugs and display labels.
 *
 * The report stage names plotdata files hist_<slug>.csv / box_<slug>.csv
 * where the slug is the metric name with ":" replaced by "_". The slug
 * lists below follow the engine's canonical metric order so panels always
 * lay out the same way; enumerating them (rather than parsing file names)
 * also keeps "pull_request" unambiguous next to the "_" separator.
 */

export const CROSS_SLUG = "cross";

export const PAIR_SLUGS: readonly string[] = [
  "pair_fork_ask",
  "pair_fork_answer",
  "pair_fork_favorite",
  "pair_commit_ask",
  "pair_commit_answer",
  "pair_commit_favorite",
  "pair_pull_request_ask",
  "pair_pull_request_answer",
  "pair_pull_request_favorite",
  "pair_watch_ask",
  "pair_watch_answer",
  "pair_watch_favorite",
];

export const CO_SLUGS: readonly string[] = [
  "co_fork",
  "co_watch",
  "co_commit",
  "co_pull_request",
  "co_answer",
  "co_favorite",
];

const LABELS: Readonly<Record<string, string>> = {
  cross: "cross-platform",
  pair_fork_ask: "fork / ask",
  pair_fork_answer: "fork / answer",
  pair_fork_favorite: "fork / favorite",
  pair_commit_ask: "commit / ask",
  pair_commit_answer: "commit / answer",
  pair_commit_favorite: "commit / favorite",
  pair_pull_request_ask: "pull request / ask",
  pair_pull_request_answer: "pull request / answer",
  pair_pull_request_favorite: "pull request / favorite",
  pair_watch_ask: "watch / ask",
  pair_watch_answer: "watch / answer",
  pair_watch_favorite: "watch / favorite",
  co_fork: "fork",
  co_watch: "watch",
  co_commit: "commit",
  co_pull_request: "pull request",
  co_answer: "answer",
  co_favorite: "favorite",
};

export function metricLabel(slug: string): string {
  return LABELS[slug] ?? slug;
}
