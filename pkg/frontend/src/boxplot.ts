/**
 * Grouped boxplot panel: one box-and-whisker glyph per metric, drawn
 * directly from the five-number summaries read from the box CSVs. No
 * statistic is recomputed here — whiskers sit at min/max, the box spans
 * q1..q3 and the median line is placed at the median, all on a fixed
 * [0, 1] score axis.
 */

import type { FiveNumberSummary } from "./csv.js";
import { fmt, line, rect, svgDocument, text } from "./svg.js";

export interface BoxEntry {
  label: string;
  five: FiveNumberSummary;
}

export const BOX_LAYOUT = {
  marginTop: 48,
  marginRight: 24,
  marginBottom: 96,
  marginLeft: 64,
  innerHeight: 280,
  slotWidth: 56,
  boxWidth: 28,
  minSlots: 4,
} as const;

export function valueToY(value: number): number {
  return BOX_LAYOUT.marginTop + (1 - value) * BOX_LAYOUT.innerHeight;
}

export function panelWidth(entryCount: number): number {
  const slots = Math.max(entryCount, BOX_LAYOUT.minSlots);
  return BOX_LAYOUT.marginLeft + slots * BOX_LAYOUT.slotWidth + BOX_LAYOUT.marginRight;
}

const Y_TICKS = [0, 0.25, 0.5, 0.75, 1];

function boxGlyph(entry: BoxEntry, cx: number, bottom: number): string[] {
  const { boxWidth } = BOX_LAYOUT;
  const { min, q1, median, q3, max } = entry.five;
  const capHalf = boxWidth / 4;
  const body: string[] = [];
  body.push(line(cx, valueToY(min), cx, valueToY(q1), "whisker"));
  body.push(line(cx, valueToY(q3), cx, valueToY(max), "whisker"));
  body.push(line(cx - capHalf, valueToY(min), cx + capHalf, valueToY(min), "cap"));
  body.push(line(cx - capHalf, valueToY(max), cx + capHalf, valueToY(max), "cap"));
  body.push(
    rect(
      cx - boxWidth / 2,
      valueToY(q3),
      boxWidth,
      valueToY(q1) - valueToY(q3),
      "box",
      "#f2d9a6",
    ),
  );
  body.push(
    line(cx - boxWidth / 2, valueToY(median), cx + boxWidth / 2, valueToY(median), "median"),
  );
  body.push(
    text(cx, bottom + 16, entry.label, "tick-label", { rotate: -35, anchor: "end" }),
  );
  return body;
}

export function renderBoxPanel(entries: BoxEntry[], title: string): string {
  const { marginTop, marginLeft, innerHeight, slotWidth } = BOX_LAYOUT;
  const width = panelWidth(entries.length);
  const height = marginTop + innerHeight + BOX_LAYOUT.marginBottom;
  const bottom = marginTop + innerHeight;
  const innerWidth = width - marginLeft - BOX_LAYOUT.marginRight;

  const body: string[] = [];
  body.push(text(width / 2, marginTop - 24, title, "title", { size: 16 }));
  body.push(line(marginLeft, marginTop, marginLeft, bottom, "axis"));
  for (const tick of Y_TICKS) {
    const y = valueToY(tick);
    body.push(line(marginLeft - 4, y, marginLeft, y, "tick"));
    body.push(text(marginLeft - 8, y + 4, fmt(tick), "tick-label", { anchor: "end" }));
  }
  body.push(line(marginLeft, bottom, marginLeft + innerWidth, bottom, "axis"));
  body.push(
    text(marginLeft - 44, marginTop + innerHeight / 2, "score", "axis-label", {
      rotate: -90,
    }),
  );

  if (entries.length === 0) {
    body.push(
      text(marginLeft + innerWidth / 2, marginTop + innerHeight / 2, "no defined scores", "note"),
    );
  }
  for (const [index, entry] of entries.entries()) {
    const cx = marginLeft + index * slotWidth + slotWidth / 2;
    body.push(...boxGlyph(entry, cx, bottom));
  }
  return svgDocument(width, height, body);
}
