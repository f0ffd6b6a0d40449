/**
 * Render a plotdata directory into three SVG panels:
 *
 *   hist_cross.svg  histogram of the cross-platform score distribution
 *   box_pairs.svg   grouped boxplots across the twelve activity pairs
 *   box_co.svg      grouped boxplots across the six co-participation kinds
 *
 * hist_cross.csv must exist (the report stage always writes it). Box CSVs
 * are discovered: the report omits box_<metric>.csv when a metric has no
 * defined scores, so an absent file simply leaves a gap in its panel while
 * a present-but-malformed file is an error.
 */

import { existsSync, mkdirSync, statSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { type BoxEntry, renderBoxPanel } from "./boxplot.js";
import { PlotDataError, readBoxCsv, readHistogramCsv } from "./csv.js";
import { renderHistogram } from "./histogram.js";
import { CO_SLUGS, CROSS_SLUG, metricLabel, PAIR_SLUGS } from "./metrics.js";

export interface PanelTitles {
  histogram?: string;
  pairs?: string;
  co?: string;
}

export interface PlotJob {
  plotdataDir: string;
  outDir: string;
  format: "svg";
  titles?: PanelTitles;
}

const DEFAULT_TITLES: Required<PanelTitles> = {
  histogram: "cross-platform interest similarity",
  pairs: "interest similarity by activity pair",
  co: "co-participation interest similarity",
};

function collectBoxEntries(plotdataDir: string, slugs: readonly string[]): BoxEntry[] {
  const entries: BoxEntry[] = [];
  for (const slug of slugs) {
    const file = join(plotdataDir, `box_${slug}.csv`);
    if (existsSync(file)) {
      entries.push({ label: metricLabel(slug), five: readBoxCsv(file) });
    }
  }
  return entries;
}

export function render(job: PlotJob): string[] {
  const { plotdataDir, outDir } = job;
  const titles = {
    histogram: job.titles?.histogram ?? DEFAULT_TITLES.histogram,
    pairs: job.titles?.pairs ?? DEFAULT_TITLES.pairs,
    co: job.titles?.co ?? DEFAULT_TITLES.co,
  };
  try {
    if (!statSync(plotdataDir).isDirectory()) {
      throw new PlotDataError(plotdataDir, "not a directory");
    }
  } catch (err) {
    if (err instanceof PlotDataError) {
      throw err;
    }
    throw new PlotDataError(plotdataDir, "plotdata directory not found");
  }

  const histFile = join(plotdataDir, `hist_${CROSS_SLUG}.csv`);
  const panels: Array<[string, string]> = [
    [`hist_${CROSS_SLUG}.svg`, renderHistogram(readHistogramCsv(histFile), titles.histogram)],
    ["box_pairs.svg", renderBoxPanel(collectBoxEntries(plotdataDir, PAIR_SLUGS), titles.pairs)],
    ["box_co.svg", renderBoxPanel(collectBoxEntries(plotdataDir, CO_SLUGS), titles.co)],
  ];

  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  for (const [name, svg] of panels) {
    const path = join(outDir, name);
    writeFileSync(path, svg, "utf-8");
    written.push(path);
  }
  return written;
}
