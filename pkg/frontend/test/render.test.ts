import { afterEach, describe, expect, it } from "vitest";
import { cpSync, readFileSync, rmSync } from "node:fs";
import { join } from "node:path";

import { PlotDataError } from "../src/csv.js";
import { render } from "../src/render.js";
import { cleanupTmpDirs, FIXTURES, makeTmpDir, writeCsv } from "./helpers.js";

afterEach(cleanupTmpDirs);

function renderFixture(name: string, outDir: string): string[] {
  return render({ plotdataDir: join(FIXTURES, name), outDir, format: "svg" });
}

describe("render", () => {
  it("writes the histogram and the two boxplot panels", () => {
    const out = makeTmpDir();
    const written = renderFixture("synthetic500", out);
    expect(written).toEqual([
      join(out, "hist_cross.svg"),
      join(out, "box_pairs.svg"),
      join(out, "box_co.svg"),
    ]);
    for (const path of written) {
      expect(readFileSync(path, "utf-8").startsWith("<svg ")).toBe(true);
    }
  });

  it("groups every discovered pair and co metric", () => {
    const out = makeTmpDir();
    renderFixture("synthetic500", out);
    const pairs = readFileSync(join(out, "box_pairs.svg"), "utf-8");
    const co = readFileSync(join(out, "box_co.svg"), "utf-8");
    expect(pairs.match(/class="box"/g)).toHaveLength(12);
    expect(co.match(/class="box"/g)).toHaveLength(6);
    expect(pairs).toContain(">pull request / favorite</text>");
    expect(co).toContain(">pull request</text>");
  });

  it("draws box glyphs from the CSV numbers without recomputation", () => {
    // fixtures/synthetic500/box_co_watch.csv holds
    // 0.333333,0.750000,0.842593,1.000000,1.000000; watch is the second
    // slot of the co panel, so its median line must sit at
    // y = 48 + (1 - 0.842593) * 280 = 92.07.
    const out = makeTmpDir();
    renderFixture("synthetic500", out);
    const co = readFileSync(join(out, "box_co.svg"), "utf-8");
    expect(co).toContain(
      '<line class="median" x1="134.00" y1="92.07" x2="162.00" y2="92.07" stroke="currentColor"/>',
    );
    expect(co).toContain('<rect class="box" x="134.00" y="48.00" width="28.00" height="70.00"');
  });

  it("leaves gaps for metrics whose box CSV was not written", () => {
    const out = makeTmpDir();
    renderFixture("example1", out);
    const pairs = readFileSync(join(out, "box_pairs.svg"), "utf-8");
    const co = readFileSync(join(out, "box_co.svg"), "utf-8");
    expect(pairs.match(/class="box"/g)).toHaveLength(4);
    expect(co.match(/class="box"/g)).toBeNull();
    expect(co).toContain(">no defined scores</text>");
  });

  it("renders the second worked example with its single co box", () => {
    const out = makeTmpDir();
    renderFixture("example2", out);
    const co = readFileSync(join(out, "box_co.svg"), "utf-8");
    expect(co.match(/class="box"/g)).toHaveLength(1);
    expect(co).toContain(">watch</text>");
  });

  it("applies title overrides", () => {
    const out = makeTmpDir();
    render({
      plotdataDir: join(FIXTURES, "example1"),
      outDir: out,
      format: "svg",
      titles: { histogram: "H", co: "C" },
    });
    expect(readFileSync(join(out, "hist_cross.svg"), "utf-8")).toContain(">H</text>");
    expect(readFileSync(join(out, "box_co.svg"), "utf-8")).toContain(">C</text>");
    expect(readFileSync(join(out, "box_pairs.svg"), "utf-8")).toContain(
      ">interest similarity by activity pair</text>",
    );
  });

  it("rejects a missing plotdata directory", () => {
    const missing = join(makeTmpDir(), "nope");
    expect(() => render({ plotdataDir: missing, outDir: makeTmpDir(), format: "svg" })).toThrowError(
      new PlotDataError(missing, "plotdata directory not found").message,
    );
  });

  it("rejects a plotdata path that is a file", () => {
    const dir = makeTmpDir();
    const file = writeCsv(dir, "stray.csv", ["x"]);
    expect(() => render({ plotdataDir: file, outDir: makeTmpDir(), format: "svg" })).toThrowError(
      "not a directory",
    );
  });

  it("requires the cross histogram CSV", () => {
    const dir = makeTmpDir();
    cpSync(join(FIXTURES, "example1"), dir, { recursive: true });
    rmSync(join(dir, "hist_cross.csv"));
    expect(() => render({ plotdataDir: dir, outDir: makeTmpDir(), format: "svg" })).toThrowError(
      join(dir, "hist_cross.csv"),
    );
  });

  it("fails loudly on a malformed box CSV, naming the file", () => {
    const dir = makeTmpDir();
    cpSync(join(FIXTURES, "example1"), dir, { recursive: true });
    const bad = writeCsv(dir, "box_pair_fork_answer.csv", [
      "min,q1,median,q3,max",
      "0,0,broken,0,0",
    ]);
    expect(() => render({ plotdataDir: dir, outDir: makeTmpDir(), format: "svg" })).toThrowError(bad);
  });
});
