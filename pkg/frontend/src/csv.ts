/**
 * Strict readers for the plotdata CSV files written by the interset report
 * stage.
 *
 * Two schemas exist:
 *
 *   hist_<metric>.csv  header "bin_low,bin_high,count", one row per bin
 *   box_<metric>.csv   header "min,q1,median,q3,max", exactly one data row
 *
 * Every deviation from the schema raises a PlotDataError naming the file,
 * so a truncated or hand-edited input fails loudly instead of producing a
 * silently wrong figure.
 */

import { readFileSync } from "node:fs";

export class PlotDataError extends Error {
  readonly file: string;

  constructor(file: string, problem: string) {
    super(`${file}: ${problem}`);
    this.name = "PlotDataError";
    this.file = file;
  }
}

export interface HistogramBin {
  binLow: number;
  binHigh: number;
  count: number;
}

export interface FiveNumberSummary {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

const HIST_HEADER = "bin_low,bin_high,count";
const BOX_HEADER = "min,q1,median,q3,max";

function readRows(file: string, header: string): string[][] {
  let text: string;
  try {
    text = readFileSync(file, "utf-8");
  } catch (err) {
    const code = (err as NodeJS.ErrnoException).code ?? "unreadable";
    throw new PlotDataError(file, `cannot read file (${code})`);
  }
  const lines = text.split("\n");
  if (lines.at(-1) === "") {
    lines.pop();
  }
  if (lines.length === 0 || lines[0] !== header) {
    throw new PlotDataError(file, `expected header "${header}"`);
  }
  const width = header.split(",").length;
  const rows: string[][] = [];
  for (const [index, line] of lines.slice(1).entries()) {
    const fields = line.split(",");
    if (fields.length !== width) {
      throw new PlotDataError(
        file,
        `row ${index + 1} has ${fields.length} fields, expected ${width}`,
      );
    }
    rows.push(fields);
  }
  if (rows.length === 0) {
    throw new PlotDataError(file, "no data rows");
  }
  return rows;
}

function parseNumber(file: string, field: string, what: string): number {
  const value = field === "" ? Number.NaN : Number(field);
  if (!Number.isFinite(value)) {
    throw new PlotDataError(file, `${what} is not a finite number: "${field}"`);
  }
  return value;
}

export function readHistogramCsv(file: string): HistogramBin[] {
  const bins: HistogramBin[] = [];
  for (const [index, row] of readRows(file, HIST_HEADER).entries()) {
    const where = `row ${index + 1}`;
    const binLow = parseNumber(file, row[0]!, `${where} bin_low`);
    const binHigh = parseNumber(file, row[1]!, `${where} bin_high`);
    const count = parseNumber(file, row[2]!, `${where} count`);
    if (binLow >= binHigh) {
      throw new PlotDataError(file, `${where} has bin_low >= bin_high`);
    }
    if (!Number.isInteger(count) || count < 0) {
      throw new PlotDataError(
        file,
        `${where} count is not a non-negative integer: "${row[2]}"`,
      );
    }
    bins.push({ binLow, binHigh, count });
  }
  return bins;
}

export function readBoxCsv(file: string): FiveNumberSummary {
  const rows = readRows(file, BOX_HEADER);
  if (rows.length !== 1) {
    throw new PlotDataError(file, `expected exactly one data row, got ${rows.length}`);
  }
  const row = rows[0]!;
  const names = BOX_HEADER.split(",");
  const values = row.map((field, i) => parseNumber(file, field, names[i]!));
  const [min, q1, median, q3, max] = values as [number, number, number, number, number];
  if (!(min <= q1 && q1 <= median && median <= q3 && q3 <= max)) {
    throw new PlotDataError(file, "five-number summary is not non-decreasing");
  }
  return { min, q1, median, q3, max };
}
