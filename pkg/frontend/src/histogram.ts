/**
 * Histogram panel: one bar per CSV bin, bar heights proportional to the
 * counts exactly as read (the tallest bin spans the full inner height).
 */

import type { HistogramBin } from "./csv.js";
import { fmt, line, rect, svgDocument, text } from "./svg.js";

export const HIST_LAYOUT = {
  width: 640,
  height: 400,
  marginTop: 48,
  marginRight: 24,
  marginBottom: 64,
  marginLeft: 64,
} as const;

export interface PanelArea {
  x0: number;
  y0: number;
  innerWidth: number;
  innerHeight: number;
}

export function histArea(): PanelArea {
  const { width, height, marginTop, marginRight, marginBottom, marginLeft } =
    HIST_LAYOUT;
  return {
    x0: marginLeft,
    y0: marginTop,
    innerWidth: width - marginLeft - marginRight,
    innerHeight: height - marginTop - marginBottom,
  };
}

export function renderHistogram(bins: HistogramBin[], title: string): string {
  const { width, height } = HIST_LAYOUT;
  const { x0, y0, innerWidth, innerHeight } = histArea();
  const bottom = y0 + innerHeight;
  const maxCount = Math.max(1, ...bins.map((bin) => bin.count));
  const barWidth = innerWidth / bins.length;

  const body: string[] = [];
  body.push(text(width / 2, y0 - 24, title, "title", { size: 16 }));
  for (const [index, bin] of bins.entries()) {
    const barHeight = (bin.count / maxCount) * innerHeight;
    body.push(
      rect(
        x0 + index * barWidth + 0.5,
        bottom - barHeight,
        Math.max(barWidth - 1, 1),
        barHeight,
        "bar",
        "#7aa6c2",
      ),
    );
  }
  body.push(line(x0, bottom, x0 + innerWidth, bottom, "axis"));
  body.push(line(x0, y0, x0, bottom, "axis"));

  const step = Math.max(1, Math.floor(bins.length / 4));
  for (let index = 0; index < bins.length; index += step) {
    const x = x0 + index * barWidth;
    body.push(line(x, bottom, x, bottom + 4, "tick"));
    body.push(text(x, bottom + 18, fmt(bins[index]!.binLow), "tick-label"));
  }
  const xEnd = x0 + innerWidth;
  body.push(line(xEnd, bottom, xEnd, bottom + 4, "tick"));
  body.push(text(xEnd, bottom + 18, fmt(bins.at(-1)!.binHigh), "tick-label"));

  body.push(line(x0 - 4, bottom, x0, bottom, "tick"));
  body.push(text(x0 - 8, bottom + 4, "0", "tick-label", { anchor: "end" }));
  body.push(line(x0 - 4, y0, x0, y0, "tick"));
  body.push(text(x0 - 8, y0 + 4, String(maxCount), "tick-label", { anchor: "end" }));

  body.push(text(x0 + innerWidth / 2, bottom + 40, "score", "axis-label"));
  body.push(
    text(x0 - 44, y0 + innerHeight / 2, "developers", "axis-label", {
      rotate: -90,
    }),
  );
  return svgDocument(width, height, body);
}
