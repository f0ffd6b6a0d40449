import { afterEach, describe, expect, it } from "vitest";
import { join } from "node:path";

import { PlotDataError, readBoxCsv, readHistogramCsv } from "../src/csv.js";
import { cleanupTmpDirs, FIXTURES, histLines, makeTmpDir, writeCsv } from "./helpers.js";

afterEach(cleanupTmpDirs);

describe("readHistogramCsv", () => {
  it("reads the committed example fixture", () => {
    const bins = readHistogramCsv(join(FIXTURES, "example1", "hist_cross.csv"));
    expect(bins).toHaveLength(20);
    expect(bins[0]).toEqual({ binLow: 0, binHigh: 0.05, count: 0 });
    const total = bins.reduce((acc, bin) => acc + bin.count, 0);
    expect(total).toBe(1);
  });

  it("reads counts in order", () => {
    const dir = makeTmpDir();
    const counts = Array.from({ length: 20 }, (_, i) => i * 3);
    const file = writeCsv(dir, "hist_cross.csv", histLines(counts));
    expect(readHistogramCsv(file).map((bin) => bin.count)).toEqual(counts);
  });

  it("names a missing file", () => {
    const file = join(makeTmpDir(), "hist_cross.csv");
    expect(() => readHistogramCsv(file)).toThrowError(PlotDataError);
    expect(() => readHistogramCsv(file)).toThrowError(file);
    expect(() => readHistogramCsv(file)).toThrowError("ENOENT");
  });

  it.each([
    [["bin_lo,bin_high,count", "0.00,0.05,1"], 'expected header "bin_low,bin_high,count"'],
    [["bin_low,bin_high,count"], "no data rows"],
    [["bin_low,bin_high,count", "0.00,0.05"], "row 1 has 2 fields, expected 3"],
    [["bin_low,bin_high,count", "0.00,x,1"], "bin_high is not a finite number"],
    [["bin_low,bin_high,count", "0.05,0.05,1"], "bin_low >= bin_high"],
    [["bin_low,bin_high,count", "0.00,0.05,-1"], "not a non-negative integer"],
    [["bin_low,bin_high,count", "0.00,0.05,1.5"], "not a non-negative integer"],
    [["bin_low,bin_high,count", "0.00,0.05,1", ""], "row 2 has 1 fields, expected 3"],
  ])("rejects malformed content %j", (lines, message) => {
    const file = writeCsv(makeTmpDir(), "hist_cross.csv", lines as string[]);
    expect(() => readHistogramCsv(file)).toThrowError(message);
    expect(() => readHistogramCsv(file)).toThrowError(file);
  });
});

describe("readBoxCsv", () => {
  it("reads the committed example fixture", () => {
    const five = readBoxCsv(join(FIXTURES, "example1", "box_cross.csv"));
    expect(five).toEqual({
      min: 0.666667,
      q1: 0.666667,
      median: 0.666667,
      q3: 0.666667,
      max: 0.666667,
    });
  });

  it("reads a spread summary", () => {
    const file = writeCsv(makeTmpDir(), "box_cross.csv", [
      "min,q1,median,q3,max",
      "0.000000,0.250000,0.500000,0.750000,1.000000",
    ]);
    expect(readBoxCsv(file)).toEqual({ min: 0, q1: 0.25, median: 0.5, q3: 0.75, max: 1 });
  });

  it.each([
    [["min,q1,med,q3,max", "0,0,0,0,0"], 'expected header "min,q1,median,q3,max"'],
    [["min,q1,median,q3,max"], "no data rows"],
    [["min,q1,median,q3,max", "0,0,0,0,0", "1,1,1,1,1"], "expected exactly one data row, got 2"],
    [["min,q1,median,q3,max", "0,0,nan,0,0"], "median is not a finite number"],
    [["min,q1,median,q3,max", "0,0.5,0.25,0.75,1"], "not non-decreasing"],
  ])("rejects malformed content %j", (lines, message) => {
    const file = writeCsv(makeTmpDir(), "box_cross.csv", lines as string[]);
    expect(() => readBoxCsv(file)).toThrowError(message);
    expect(() => readBoxCsv(file)).toThrowError(file);
  });
});
