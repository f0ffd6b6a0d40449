/**
 * Command line entry point.
 *
 *   interset-plots render --plotdata reports/plotdata --out reports/figures
 *
 * Exit codes: 0 success, 1 missing or malformed plot data, 2 usage error.
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { PlotDataError } from "./csv.js";
import { render } from "./render.js";

const USAGE =
  "usage: interset-plots render --plotdata DIR --out DIR [--format svg]\n" +
  "                             [--hist-title T] [--pairs-title T] [--co-title T]";

export function main(argv: string[]): number {
  if (argv[0] !== "render") {
    console.error(argv.length === 0 ? USAGE : `unknown command ${JSON.stringify(argv[0])}\n${USAGE}`);
    return 2;
  }
  let values;
  try {
    ({ values } = parseArgs({
      args: argv.slice(1),
      options: {
        plotdata: { type: "string" },
        out: { type: "string" },
        format: { type: "string", default: "svg" },
        "hist-title": { type: "string" },
        "pairs-title": { type: "string" },
        "co-title": { type: "string" },
      },
      strict: true,
      allowPositionals: false,
    }));
  } catch (err) {
    console.error(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  if (values.plotdata === undefined || values.out === undefined) {
    console.error(`--plotdata and --out are required\n${USAGE}`);
    return 2;
  }
  if (values.format !== "svg") {
    const detail =
      values.format === "png"
        ? "png output is not supported; use --format svg"
        : `unknown format ${JSON.stringify(values.format)}`;
    console.error(`${detail}\n${USAGE}`);
    return 2;
  }

  try {
    const written = render({
      plotdataDir: values.plotdata,
      outDir: values.out,
      format: "svg",
      titles: {
        histogram: values["hist-title"],
        pairs: values["pairs-title"],
        co: values["co-title"],
      },
    });
    for (const path of written) {
      console.log(`wrote ${path}`);
    }
    return 0;
  } catch (err) {
    if (err instanceof PlotDataError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
